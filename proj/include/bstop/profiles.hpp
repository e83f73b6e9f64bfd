#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bstop/sequences.hpp"

namespace bstop {

/// Per-trial success probabilities p_1..p_N. For problems truncated from an
/// infinite horizon, tail_bound certifies sum_{k>N} p_k <= tail_bound;
/// tail_bound == 0 marks a genuinely finite problem, absence means no
/// certificate.
struct SuccessProfile {
    std::vector<double> probs;  // probs[k-1] = p_k
    std::optional<double> tail_bound;

    std::size_t trials() const { return probs.size(); }
    double p(std::size_t k) const { return probs[k - 1]; }  // 1-based
    double q(std::size_t k) const { return 1.0 - probs[k - 1]; }
};

struct OddsVector {
    std::vector<double> odds;  // odds[k-1] = p_k / (1 - p_k)
};

/// Stopping payoff f over the extended state set: f.values[k] = f_k with
/// f_0 = 0, f.terminal = reward for never stopping. values.size() must be
/// profile.trials() + 1.
struct StoppingProblem {
    SuccessProfile profile;
    ExtendedSequence f;

    std::size_t trials() const { return profile.trials(); }
};

struct ExistenceReport {
    double sum_f = 0.0;       // partial sum of f_k over the truncation
    double sum_p = 0.0;       // partial sum of p_k
    double sum_fp = 0.0;      // partial sum of f_k p_k
    std::optional<double> tail_bound;
    double last_f = 0.0;      // stands in for lim f_k
    bool limit_le_terminal = false;
    bool limit_heuristic = true;   // false only when tail_bound == 0
    bool cond_sum_f = false;       // (i) certified
    bool cond_sum_p = false;       // (ii) certified
    bool cond_sum_fp = false;      // (iii) certified
    bool any_certified = false;
};

SuccessProfile make_profile(std::vector<double> probs,
                            std::optional<double> tail_bound = std::nullopt);

OddsVector odds(const SuccessProfile& profile);

/// Profile p_k = c q^k for k = 1..N with N minimal such that the exact
/// geometric tail c q^{N+1} / (1 - q) <= eps; that tail becomes tail_bound.
SuccessProfile truncate_geometric(double c, double q, double eps);

StoppingProblem make_problem(SuccessProfile profile, ExtendedSequence f);

ExistenceReport existence_check(const StoppingProblem& problem);

}  // namespace bstop
