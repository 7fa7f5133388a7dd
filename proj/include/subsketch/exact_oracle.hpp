#pragma once

#include "subsketch/instance_model.hpp"

#include <span>

namespace subsketch {

//! Minimal makespan of `jobs` on m machines. Tries, in order: exhaustive
//! assignment when m^n <= 1e8, subset-sum bitset for integral jobs on two
//! machines, load-set DP for integral jobs on more machines. Throws
//! OracleScaleError when none applies.
double exact_opt(std::span<const double> jobs, int m);

//! Minimal makespan of the jobs a sketch stands for. On two machines the
//! count vector is enumerated directly (one dimension solved in closed form),
//! so large counts with few entries stay cheap; otherwise the sketch is
//! expanded and passed to exact_opt.
double exact_opt(const SketchInstance& sketch, int m);

} // namespace subsketch
