#include "subsketch/suites.hpp"

#include "subsketch/error.hpp"
#include "subsketch/exact_oracle.hpp"
#include "subsketch/generators.hpp"
#include "subsketch/scheduler.hpp"
#include "subsketch/sketch_adaptive.hpp"
#include "subsketch/sketch_known.hpp"
#include "subsketch/wrs_oracle.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace subsketch {

OptOracles OptOracles::library() {
    return OptOracles{[](std::span<const double> jobs, int m) { return exact_opt(jobs, m); },
                      [](const SketchInstance& s, int m) { return exact_opt(s, m); }};
}

bool SuiteSummary::pass() const {
    return !lines.empty() &&
           std::all_of(lines.begin(), lines.end(), [](const CriterionLine& l) { return l.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "meta_sandwich",     "expansion_bound", "sampler_chisq", "collision_bounds",
        "birthday_envelope", "known_n_opt",     "adaptive_opt",  "sublinearity",
        "deterministic",     "lemma4"};
    return names;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const auto n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    LinearFit fit;
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2) {
        return fit;
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    fit.slope = sxx > 0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

namespace {

constexpr double kSlack = 1e-9;

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

CriterionLine frequency_line(std::string label, std::uint64_t hits, std::uint64_t trials, double threshold,
                             std::string detail = {}) {
    CriterionLine line;
    line.label = std::move(label);
    line.observed = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    line.threshold = threshold;
    std::tie(line.ci_low, line.ci_high) = wilson_interval(hits, trials);
    line.pass = trials > 0 && line.observed >= threshold;
    line.detail = std::move(detail);
    return line;
}

CriterionLine count_line(std::string label, std::uint64_t ok, std::uint64_t trials, std::string detail = {}) {
    CriterionLine line = frequency_line(std::move(label), ok, trials, 1.0, std::move(detail));
    line.pass = trials > 0 && ok == trials;
    return line;
}

// Sketch with at most 12 jobs over at most five random intervals.
SketchInstance random_small_sketch(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> anchor_dist(1.0, 100.0);
    std::uniform_real_distribution<double> delta_dist(0.05, 0.3);
    const IntervalScheme scheme(anchor_dist(rng), delta_dist(rng));
    const int total = std::uniform_int_distribution<int>(1, 12)(rng);
    const int t = std::uniform_int_distribution<int>(1, std::min(5, total))(rng);
    std::vector<int> intervals(15);
    std::iota(intervals.begin(), intervals.end(), 1);
    std::shuffle(intervals.begin(), intervals.end(), rng);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(t), 1);
    for (int extra = total - t; extra > 0; --extra) {
        ++counts[std::uniform_int_distribution<std::size_t>(0, counts.size() - 1)(rng)];
    }
    std::vector<SketchEntry> entries;
    for (int i = 0; i < t; ++i) {
        entries.push_back(make_entry(scheme, intervals[static_cast<std::size_t>(i)],
                                     counts[static_cast<std::size_t>(i)], EntrySource::deterministic));
    }
    return SketchInstance(scheme, std::move(entries));
}

SuiteSummary meta_sandwich(std::uint64_t trials, std::uint64_t seed, const OptOracles& oracles) {
    SuiteSummary out{"meta_sandwich", {}};
    std::uint64_t sandwiched = 0;
    std::uint64_t feasible = 0;
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + trial);
        const int m = trial % 2 == 0 ? 2 : 3;
        const double eps = (trial / 2) % 2 == 0 ? 0.2 : 0.5;
        const auto sketch = random_small_sketch(rng);
        const double opt = oracles.sketch(sketch, m);
        const auto res = meta_sketch_schedule(sketch, m, eps, SolverStrategy::automatic);
        const double T = res.meta.T;
        worst = std::max(worst, T / opt);
        if (T >= opt * (1 - kSlack) && T <= (1 + eps) * opt * (1 + kSlack)) {
            ++sandwiched;
        }
        bool ok = res.fill_iterations <= static_cast<std::size_t>(m) + sketch.size();
        for (std::size_t e = 0; e < sketch.size(); ++e) {
            ok = ok && res.schedule.column_sum(e) == sketch[e].count;
        }
        for (int i = 0; i < m; ++i) {
            ok = ok && res.schedule.load(static_cast<std::size_t>(i), sketch) <= T * (1 + kSlack);
        }
        feasible += ok;
    }
    auto line = count_line("OPT <= T <= (1+eps) OPT", sandwiched, trials,
                           "worst T/OPT " + fmt(worst));
    out.lines.push_back(line);
    out.lines.push_back(count_line("sketch schedule conserves counts, loads <= T", feasible, trials));
    return out;
}

SuiteSummary expansion_bound_suite(std::uint64_t trials, std::uint64_t seed, const OptOracles& oracles) {
    SuiteSummary out{"expansion_bound", {}};
    constexpr int m = 2;
    constexpr std::size_t n = 12;
    std::uint64_t within = 0;
    std::uint64_t alpha_ok = 0;
    double worst = 0.0;
    std::string failure;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + trial);
        std::uniform_real_distribution<double> dist(1.0, 10.0);
        std::vector<double> times(n);
        for (auto& p : times) {
            p = dist(rng);
        }
        const Instance instance(times);
        const auto exact = deterministic_sketch(instance, 0.4);
        std::vector<SketchEntry> entries;
        for (const auto& e : exact.entries()) {
            const auto lo = static_cast<std::uint64_t>(std::ceil(0.8 * static_cast<double>(e.count) - kSlack));
            const auto hi = static_cast<std::uint64_t>(std::floor(1.2 * static_cast<double>(e.count) + kSlack));
            auto count = std::uniform_int_distribution<std::uint64_t>(std::max<std::uint64_t>(1, lo), hi)(rng);
            entries.push_back(make_entry(exact.scheme(), e.interval, count, EntrySource::deterministic));
        }
        const SketchInstance sketch(exact.scheme(), std::move(entries));
        const auto scheduled = meta_sketch_schedule(sketch, m, 0.2, SolverStrategy::exact_bb);
        const auto concrete = expand_schedule(instance, sketch, scheduled.schedule);

        const double opt = oracles.jobs(instance.times(), m);
        const double sketch_opt = oracles.sketch(sketch, m);
        const auto quality = validate_sketch_quality(instance, sketch, opt, sketch_opt);
        if (const auto* q = std::get_if<SketchQuality>(&quality)) {
            alpha_ok += q->alpha <= 0.2 + kSlack;
            const double bound = expansion_bound(*q, m, opt);
            worst = std::max(worst, concrete.makespan / bound);
            if (concrete.makespan <= bound * (1 + kSlack)) {
                ++within;
            } else if (failure.empty()) {
                failure = "trial " + std::to_string(trial) + " makespan " + fmt(concrete.makespan) +
                          " > bound " + fmt(bound);
            }
        } else if (failure.empty()) {
            failure = "trial " + std::to_string(trial) + ": " + std::get<QualityViolation>(quality).reason;
        }
    }
    out.lines.push_back(count_line("expanded makespan <= expansion bound", within, trials,
                                   failure.empty() ? "worst makespan/bound " + fmt(worst) : failure));
    out.lines.push_back(count_line("measured alpha <= 0.2", alpha_ok, trials));
    return out;
}

SuiteSummary sampler_chisq(std::uint64_t trials, std::uint64_t seed) {
    SuiteSummary out{"sampler_chisq", {}};
    std::vector<std::vector<double>> vectors{{1.0, 2.0, 3.0}};
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + trial);
        std::uniform_real_distribution<double> dist(1.0, 10.0);
        for (std::size_t size : {2, 10, 100}) {
            std::vector<double> w(size);
            for (auto& x : w) {
                x = dist(rng);
            }
            vectors.push_back(std::move(w));
        }
    }
    std::uint64_t idx = 0;
    for (const auto& w : vectors) {
        const Instance instance(w);
        auto sampler = SamplerIndex::build(instance, seed + idx++);
        const std::size_t n = w.size();
        // 50 draws per element, raised so that every expected cell count is at least 5.
        const double total = instance.total_time();
        const double min_w = *std::min_element(w.begin(), w.end());
        const auto draws = static_cast<std::uint64_t>(
            std::max(50.0 * static_cast<double>(n), std::ceil(5.0 * total / min_w)));
        std::vector<std::uint64_t> counts(n, 0);
        const double visit_bound = 2.0 * std::log2(static_cast<double>(n)) + 2.0;
        bool visits_ok = sampler.height() <= visit_bound;
        for (std::uint64_t d = 0; d < draws; ++d) {
            ++counts[sampler.sample_one().job_index];
            visits_ok = visits_ok && sampler.last_visit_count() <= visit_bound;
        }
        double chi2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double expected = static_cast<double>(draws) * w[j] / total;
            chi2 += (static_cast<double>(counts[j]) - expected) * (static_cast<double>(counts[j]) - expected) /
                    expected;
        }
        boost::math::chi_squared_distribution<double> law(static_cast<double>(n - 1));
        const double critical = boost::math::quantile(boost::math::complement(law, 0.001));
        CriterionLine line;
        line.label = "chi-square n=" + std::to_string(n) + " draws=" + std::to_string(draws);
        line.observed = chi2;
        line.threshold = critical;
        line.ci_low = line.ci_high = chi2;
        line.pass = chi2 <= critical && visits_ok;
        line.detail = "p=" + fmt(boost::math::cdf(boost::math::complement(law, chi2))) +
                      (visits_ok ? "" : " visit bound exceeded");
        out.lines.push_back(line);
    }
    return out;
}

SuiteSummary collision_bounds(std::uint64_t trials, std::uint64_t seed) {
    SuiteSummary out{"collision_bounds", {}};
    std::uint64_t config = 0;
    for (std::size_t n : {50, 200}) {
        for (double delta : {0.05, 0.1}) {
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i) {
                w[i] = 1.0 + delta * static_cast<double>(i) / static_cast<double>(n - 1);
            }
            auto sampler = SamplerIndex::build(Instance(w), seed + 1000003ULL * config++);
            // first[L] = trials whose longest distinct prefix has length L.
            std::vector<std::uint64_t> first(n + 2, 0);
            std::vector<std::uint64_t> stamp(n, 0);
            for (std::uint64_t trial = 1; trial <= trials; ++trial) {
                std::size_t distinct = 0;
                while (true) {
                    const auto j = sampler.sample_one().job_index;
                    if (stamp[j] == trial) {
                        break;
                    }
                    stamp[j] = trial;
                    ++distinct;
                }
                ++first[distinct];
            }
            const auto T = static_cast<double>(trials);
            std::uint64_t at_least = trials; // trials with all of the first k distinct
            const double k_limit = static_cast<double>(n) / (2.0 * (1.0 + delta));
            bool ok = true;
            double worst_z = 0.0;
            std::size_t checked = 0;
            for (std::size_t k = 1; static_cast<double>(k) < k_limit; ++k) {
                at_least -= first[k - 1];
                const double p = static_cast<double>(at_least) / T;
                const double lb = collision_pr_lower(static_cast<double>(n), static_cast<double>(k), delta);
                const double ub = collision_pr_upper(static_cast<double>(n), static_cast<double>(k), delta);
                const double se_lb = std::sqrt(std::max(lb * (1 - lb), p * (1 - p)) / T);
                const double se_ub = std::sqrt(std::max(ub * (1 - ub), p * (1 - p)) / T);
                if (p < lb - 3 * se_lb || p > ub + 3 * se_ub) {
                    ok = false;
                }
                if (se_lb > 0 && p < lb) {
                    worst_z = std::max(worst_z, (lb - p) / se_lb);
                }
                if (se_ub > 0 && p > ub) {
                    worst_z = std::max(worst_z, (p - ub) / se_ub);
                }
                ++checked;
            }
            CriterionLine line;
            line.label = "n=" + std::to_string(n) + " delta=" + fmt(delta);
            line.pass = ok;
            line.observed = worst_z;
            line.threshold = 3.0;
            line.ci_low = line.ci_high = worst_z;
            line.detail = std::to_string(checked) + " values of k, worst excursion " + fmt(worst_z) + " sigma";
            out.lines.push_back(line);
        }
    }
    return out;
}

std::uint64_t birthday_min_groups(double n, double delta, double gamma0) {
    const auto cfg = KnownNConfig::make(static_cast<std::uint64_t>(n), 1, delta, gamma0);
    const double grid_points = std::log(cfg.h0) / std::log1p(delta);
    return static_cast<std::uint64_t>(
        ceil_tolerant(12.0 / (delta * delta) * std::log(16.0 * cfg.h * grid_points / gamma0)));
}

SuiteSummary birthday_envelope(std::uint64_t trials, std::uint64_t seed) {
    SuiteSummary out{"birthday_envelope", {}};
    constexpr double delta = 0.1;
    constexpr double gamma0 = 1.0 / 12.0;
    const double lo = std::pow(1 + delta, -8);
    const double hi = std::pow(1 + delta, 10);
    const double threshold = 1.0 - 9.0 / 8.0 * gamma0 - 0.05;
    std::uint64_t config = 0;
    for (std::uint64_t nk : {1000, 10000}) {
        const auto nd = static_cast<double>(nk);
        const auto cfg = KnownNConfig::make(nk, 1, delta, gamma0);
        const std::uint64_t groups = birthday_min_groups(nd, delta, gamma0);
        const std::uint64_t draws = groups * cfg.group_size;
        const Instance instance(std::vector<double>(nk, 1.0));
        std::uint64_t inside = 0;
        std::vector<SampleTally::JobId> samples(draws);
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            auto sampler = SamplerIndex::build(instance, seed + 1000003ULL * config + trial);
            for (auto& s : samples) {
                s = static_cast<SampleTally::JobId>(sampler.sample_one().job_index);
            }
            const auto est = birthday_estimate(samples, cfg);
            const auto e = static_cast<double>(est.estimate);
            inside += e >= lo * nd && e <= hi * nd;
        }
        ++config;
        out.lines.push_back(frequency_line("n_k=" + std::to_string(nk) + " groups=" + std::to_string(groups),
                                           inside, trials, threshold,
                                           "envelope [" + fmt(lo * nd) + ", " + fmt(hi * nd) + "]"));
    }
    return out;
}

// Known-n budget used at desk scale: the full K is ~1e11 draws for these parameters.
constexpr double kKnownTargetDraws = 4e6;

SuiteSummary known_n_opt(std::uint64_t trials, std::uint64_t seed, const OptOracles& oracles) {
    SuiteSummary out{"known_n_opt", {}};
    constexpr int m = 2;
    constexpr double delta = 0.05;
    constexpr double gamma0 = 1.0 / 12.0;
    constexpr double c = Params::c;
    const auto instance = generate(GeneratorSpec{"two_point", 10000, seed, {}});
    const double opt = oracles.jobs(instance.times(), m);
    const double lo = (1 - 2 * c * m * delta) * (1 - 4 * delta);
    const double hi = (1 + 6 * c * m * delta) * (1 + delta);
    const auto full = KnownNConfig::make(instance.size(), m, delta, gamma0);
    const double scale = std::min(1.0, kKnownTargetDraws / full.K_exact);
    const auto cfg = KnownNConfig::make(instance.size(), m, delta, gamma0, scale);
    std::uint64_t inside = 0;
    double min_ratio = 1e300;
    double max_ratio = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        auto sampler = SamplerIndex::build(instance, seed + trial);
        const auto res = sketch_known_n(sampler, cfg);
        const double ratio = oracles.sketch(res.sketch, m) / opt;
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        inside += ratio >= lo - kSlack && ratio <= hi + kSlack;
    }
    out.lines.push_back(frequency_line(
        "OPT(sketch)/OPT in [" + fmt(lo) + ", " + fmt(hi) + "]", inside, trials, 0.9,
        "K=" + std::to_string(cfg.K) + " (scale " + fmt(scale) + "), ratios [" + fmt(min_ratio) + ", " +
            fmt(max_ratio) + "]"));
    return out;
}

SuiteSummary adaptive_opt(std::uint64_t trials, std::uint64_t seed, const OptOracles& oracles) {
    SuiteSummary out{"adaptive_opt", {}};
    constexpr int m = 2;
    constexpr double eps = 0.5;
    constexpr double delta = 0.2;
    constexpr double gamma0 = 1.0 / 12.0;
    const auto instance = generate(GeneratorSpec{"two_point", 10000, seed, {}});
    const double opt = oracles.jobs(instance.times(), m);
    const auto cfg = AdaptiveConfig::make(m, delta, gamma0);
    std::uint64_t inside = 0;
    std::uint64_t draws = 0;
    double min_ratio = 1e300;
    double max_ratio = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        auto sampler = SamplerIndex::build(instance, seed + trial);
        const auto res = sketch_adaptive(sampler, cfg);
        const double ratio = meta_approx(res.sketch, m, eps).T / opt;
        draws = std::max(draws, res.draws);
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        inside += ratio >= 1 - 3 * eps - kSlack && ratio <= 1 + 3 * eps + kSlack;
    }
    out.lines.push_back(frequency_line("T/OPT in [1-3eps, 1+3eps]", inside, trials, 1.0 - 9.0 * gamma0 - 0.05,
                                       "ratios [" + fmt(min_ratio) + ", " + fmt(max_ratio) +
                                           "], max draws " + std::to_string(draws)));
    return out;
}

SuiteSummary sublinearity(std::uint64_t trials, std::uint64_t seed) {
    SuiteSummary out{"sublinearity", {}};
    constexpr int m = 2;
    constexpr double delta = 0.2;
    constexpr double gamma0 = 1.0 / 12.0;
    const auto cfg = AdaptiveConfig::make(m, delta, gamma0);
    std::vector<double> log_n;
    std::vector<double> log_draws;
    std::string detail;
    for (std::uint64_t n : {1000, 10000, 100000}) {
        const auto instance = generate(GeneratorSpec{"uniform", n, seed, {1.0, 2.0}});
        std::vector<double> draws;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            auto sampler = SamplerIndex::build(instance, seed + trial);
            draws.push_back(static_cast<double>(sketch_adaptive(sampler, cfg).draws));
        }
        std::sort(draws.begin(), draws.end());
        const double median = draws[draws.size() / 2];
        log_n.push_back(std::log(static_cast<double>(n)));
        log_draws.push_back(std::log(median));
        detail += "n=" + std::to_string(n) + ":" + fmt(median) + " ";
    }
    const auto fit = fit_line(log_n, log_draws);
    CriterionLine line;
    line.label = "log-log slope of draws vs n";
    line.observed = fit.slope;
    line.threshold = 0.6;
    line.ci_low = line.ci_high = fit.slope;
    line.pass = fit.slope <= 0.6;
    line.detail = detail + "(median draws)";
    out.lines.push_back(line);
    return out;
}

SuiteSummary deterministic_suite(std::uint64_t trials, std::uint64_t seed, const OptOracles& oracles) {
    SuiteSummary out{"deterministic", {}};
    std::uint64_t inside = 0;
    double worst = 0.0;
    std::string failure;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + trial);
        const auto n = std::uniform_int_distribution<std::uint64_t>(1, 12)(rng);
        const int m = trial % 2 == 0 ? 2 : 3;
        const double eps = (trial / 2) % 2 == 0 ? 0.2 : 0.5;
        const auto instance = generate(GeneratorSpec{"log_uniform", n, seed + trial, {1.0, 100.0}});
        const double T = meta_approx(deterministic_sketch(instance, eps), m, eps).T;
        const double opt = oracles.jobs(instance.times(), m);
        worst = std::max(worst, T / opt);
        if (T >= opt * (1 - kSlack) && T <= (1 + eps) * opt * (1 + kSlack)) {
            ++inside;
        } else if (failure.empty()) {
            failure = "trial " + std::to_string(trial) + " T/OPT " + fmt(T / opt);
        }
    }
    out.lines.push_back(count_line("OPT <= T <= (1+eps) OPT", inside, trials,
                                   failure.empty() ? "worst T/OPT " + fmt(worst) : failure));

    std::vector<double> sizes{1e5, 5e5, 1e6};
    std::vector<double> millis;
    for (double n : sizes) {
        const auto instance = generate(GeneratorSpec{"log_uniform", static_cast<std::uint64_t>(n), seed, {}});
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const auto sketch = deterministic_sketch(instance, 0.5);
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            best = std::min(best, ms + 0.0 * static_cast<double>(sketch.size()));
        }
        millis.push_back(best);
    }
    const auto fit = fit_line(sizes, millis);
    CriterionLine line;
    line.label = "two-pass sketch time linear in n (R^2)";
    line.observed = fit.r2;
    line.threshold = 0.99;
    line.ci_low = line.ci_high = fit.r2;
    line.pass = fit.r2 >= 0.99;
    line.detail = "ms at 1e5/5e5/1e6: " + fmt(millis[0]) + " " + fmt(millis[1]) + " " + fmt(millis[2]);
    out.lines.push_back(line);
    return out;
}

SuiteSummary lemma4(std::uint64_t /*trials*/, std::uint64_t /*seed*/) {
    SuiteSummary out{"lemma4", {}};
    struct Cfg {
        int m;
        double delta;
        double gamma0;
        int h;
    };
    for (const Cfg c : {Cfg{1, 0.1, 1.0 / 12.0, 10}, Cfg{2, 0.2, 1.0 / 12.0, 21}, Cfg{4, 0.05, 0.01, 120}}) {
        const auto cfg = AdaptiveConfig::make(c.m, c.delta, c.gamma0);
        const auto hc = HorizonConstants::make(cfg, c.h);
        const double target = c.gamma0 / std::exp(1.0);
        constexpr int steps = 200;
        double worst = 0.0;
        for (int a = 0; a <= steps; ++a) {
            const double beta = hc.beta0 * std::pow(1.0 / hc.beta0, static_cast<double>(a) / steps);
            for (int b = 0; b <= steps; ++b) {
                const double k = hc.K0_exact * (1.0 + 9.0 * static_cast<double>(b) / steps);
                worst = std::max(worst, std::exp(-beta * k / 8.0) / beta / target);
            }
        }
        CriterionLine line;
        line.label = "m=" + std::to_string(c.m) + " delta=" + fmt(c.delta) + " gamma0=" + fmt(c.gamma0) +
                     " h=" + std::to_string(c.h);
        line.observed = worst;
        line.threshold = 1.0;
        line.ci_low = line.ci_high = worst;
        line.pass = worst <= 1.0 + 1e-12;
        line.detail = "max of (1/beta) e^{-beta k/8} / (gamma0/e) over the grid";
        out.lines.push_back(line);
    }
    return out;
}

} // namespace

SuiteSummary run_validation_suite(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
                                  const OptOracles& oracles) {
    static const std::map<std::string, std::uint64_t> defaults{
        {"meta_sandwich", 500},    {"expansion_bound", 100}, {"sampler_chisq", 1},
        {"collision_bounds", 100000}, {"birthday_envelope", 200}, {"known_n_opt", 50},
        {"adaptive_opt", 50},      {"sublinearity", 3},      {"deterministic", 200},
        {"lemma4", 1}};
    const auto it = defaults.find(suite);
    if (it == defaults.end()) {
        throw ConfigError("unknown suite '" + suite + "'");
    }
    const std::uint64_t t = trials ? trials : it->second;
    if (suite == "meta_sandwich") {
        return meta_sandwich(t, seed, oracles);
    }
    if (suite == "expansion_bound") {
        return expansion_bound_suite(t, seed, oracles);
    }
    if (suite == "sampler_chisq") {
        return sampler_chisq(t, seed);
    }
    if (suite == "collision_bounds") {
        return collision_bounds(t, seed);
    }
    if (suite == "birthday_envelope") {
        return birthday_envelope(t, seed);
    }
    if (suite == "known_n_opt") {
        return known_n_opt(t, seed, oracles);
    }
    if (suite == "adaptive_opt") {
        return adaptive_opt(t, seed, oracles);
    }
    if (suite == "sublinearity") {
        return sublinearity(t, seed);
    }
    if (suite == "deterministic") {
        return deterministic_suite(t, seed, oracles);
    }
    return lemma4(t, seed);
}

} // namespace subsketch
