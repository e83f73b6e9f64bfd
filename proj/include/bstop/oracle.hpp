#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bstop/profiles.hpp"

namespace bstop {

/// Exact finite-horizon optimum: c_N = f_inf,
/// c_{k-1} = p_k max(f_k, c_k) + (1 - p_k) c_k, value = c_0,
/// stop_set = {k : f_k >= c_k}.
struct OracleResult {
    double value = 0.0;
    std::vector<std::size_t> stop_set;
    std::vector<double> continuation;  // c_0..c_N
};

OracleResult dp_solve(const StoppingProblem& problem);

/// Value of every rule "stop at the first success at index >= t" for
/// t = 1..N+1; t = N+1 means never stop. best_thresholds lists every argmax
/// t (ties within relative 1e-12).
struct ThresholdSweep {
    std::vector<double> values;  // values[t-1] for t = 1..N+1
    std::vector<std::size_t> best_thresholds;
    double best_value = 0.0;
};

ThresholdSweep threshold_sweep(const StoppingProblem& problem);

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample std / sqrt(replicates); 0 when replicates == 1
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the rule "stop at the first success whose index
/// lies in stop_set". Draws are keyed on (seed, replicate, trial) by a
/// counter-based generator, so results are bit-reproducible and independent
/// of evaluation order.
SimEstimate simulate(const StoppingProblem& problem, std::span<const std::size_t> stop_set,
                     std::uint64_t replicates, std::uint64_t seed);

/// The fixed per-draw generator: splitmix64 finalizer over the combined key.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t replicate, std::uint64_t trial);

/// Top 53 bits of the hash mapped to [0,1).
double uniform01(std::uint64_t hash);

}  // namespace bstop
