#pragma once

#include "subsketch/instance_model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace subsketch {

//! Black-box solver for the largest jobs.
enum class SolverStrategy {
    exact_bb,  //!< branch-and-bound, optimal, at most 20 jobs
    lpt,       //!< longest processing time first, ratio 4/3 - 1/(3m)
    automatic, //!< exact_bb up to 20 jobs, lpt beyond
};

std::string to_string(SolverStrategy s);
SolverStrategy parse_strategy(const std::string& s);

constexpr std::size_t kExactSolverCap = 20;

struct SolveResult {
    double makespan = 0.0;
    std::vector<int> assignment;
    SolverStrategy used = SolverStrategy::exact_bb;
    double ratio = 1.0; //!< proven worst-case ratio of `used`
};

//! Throws StrategyError for exact_bb on more than kExactSolverCap jobs.
SolveResult solve_largest(std::span<const double> jobs, int m, SolverStrategy strategy);

struct ListResult {
    bool ok = true;
    std::vector<int> assignment;
    std::vector<double> loads;
    std::size_t failed_job = 0; //!< valid when !ok
};

//! Places jobs in the given order on the least-loaded machine (lowest index on
//! ties); fails at the first job that would finish after `deadline`.
ListResult list_schedule(std::span<const double> jobs, int m, double deadline,
                         std::span<const double> initial_loads = {});

struct MetaResult {
    double T = 0.0;
    double T0 = 0.0;
    double P = 0.0;
    double delta = 0.0;
    std::size_t h = 0;            //!< ceil(m / delta)
    std::size_t largest_count = 0; //!< jobs handed to the solver
    SolverStrategy used = SolverStrategy::exact_bb;
    double solver_ratio = 1.0;
};

//! T = (1 + delta) max(T0, P/m) with delta = epsilon/3 and T0 the solver's
//! makespan on the ceil(m/delta) largest sketch jobs. Empty sketch gives T = 0.
MetaResult meta_approx(const SketchInstance& sketch, int m, double epsilon,
                       SolverStrategy strategy = SolverStrategy::automatic);

struct MetaScheduleResult {
    MetaResult meta;
    SketchSchedule schedule;
    std::size_t fill_iterations = 0;
};

//! meta_approx plus a sketch schedule: solver assignment for the largest jobs,
//! then batch filling of machines up to T in decreasing time order.
MetaScheduleResult meta_sketch_schedule(const SketchInstance& sketch, int m, double epsilon,
                                        SolverStrategy strategy = SolverStrategy::automatic);

//! Real schedule from a sketch schedule. Per interval, real jobs take the
//! sketch slots machine by machine; surplus jobs go to the machine with the
//! most slots of that interval; jobs of intervals missing from the sketch go to
//! machine 0.
ConcreteSchedule expand_schedule(const Instance& instance, const SketchInstance& sketch,
                                 const SketchSchedule& schedule);

//! ((1 + beta1)(1 + alpha/(1 - alpha) m) + beta2) * opt.
double expansion_bound(const SketchQuality& q, int m, double opt);

//! Exact two-pass sketch at delta = epsilon / 8.
SketchInstance deterministic_sketch(const Instance& instance, double epsilon);

//! Quality triple of `sketch` against `instance`, with both optima from exact_opt.
std::variant<SketchQuality, QualityViolation>
measure_sketch_quality(const Instance& instance, const SketchInstance& sketch, int m);

} // namespace subsketch
