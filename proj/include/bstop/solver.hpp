#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bstop/profiles.hpp"
#include "bstop/sequences.hpp"

namespace bstop {

// Relative tie tolerance: f_k >= g_k - kTieRelTol * max(1, |g_k|) counts as
// stopping, so exact plateau ties survive rounding.
inline constexpr double kTieRelTol = 1e-12;

struct Certificates {
    bool f_unimodal = false;
    bool g_unimodal = false;
    bool ferguson_ratio = false;
    bool ferguson_diff = false;
    bool monotone_stop_set = false;
};

struct Solution {
    std::vector<std::size_t> stop_set;       // trial indices, ascending
    std::optional<std::size_t> threshold;    // nullopt = never stop
    double value = 0.0;                      // g_{threshold-1}, or f_inf when never
    Certificates certificates;
    ExtendedSequence g;                      // continuation payoff
    std::optional<std::size_t> closed_form_index;  // k*/l* cross-check when applicable
};

struct FergusonReport {
    bool diff_nonincreasing = false;
    bool ratio_nonincreasing = false;
    std::optional<std::size_t> first_violation;  // smallest index breaking monotonicity
    std::optional<double> corollary_w;
    std::optional<bool> corollary_h_ratio_nonincreasing;
};

struct UnimodalityCertificate {
    bool f_unimodal = false;
    bool g_unimodal = false;
    bool myopic_optimal_claim = false;  // sufficient condition, advisory
};

/// The myopic (one-step-lookahead) rule: stop at the first success at an
/// index where f_k >= g_k.
Solution myopic_stop_set(const StoppingProblem& problem);

/// Ferguson's sufficient condition: g - f (equivalently g/f, with
/// g/f = +inf when f = 0) nonincreasing over trials 1..N. When (h, w) is
/// supplied, validates g = h + w f with 0 <= w < 1 and also checks h/f.
FergusonReport ferguson_check(
    const ExtendedSequence& f, const ExtendedSequence& g,
    const std::optional<std::pair<ExtendedSequence, double>>& h_w = std::nullopt);

/// Payoff sequences of the last-success problems: f_k = s_{m-1}(k+1) for the
/// m-th last success, f_k = s_{l-1}(k+1) + ... + s_{m-1}(k+1) for the
/// l-to-m-th; f_0 = 0 and f_inf = 0.
ExtendedSequence mth_last_payoff(const SuccessProfile& profile, int m);
ExtendedSequence l_to_m_payoff(const SuccessProfile& profile, int ell, int m);

/// Myopic solution of the m-th last-success problem, cross-checked against
/// the closed-form index k* = min{j : e_m(j) <= e_{m-1}(j)} (product-form
/// comparison when some p_k = 1). The closed form is allowed to sit exactly
/// one index above the myopic threshold; anything else raises
/// InternalInconsistency.
Solution solve_mth_last(const SuccessProfile& profile, int m);

/// Same for the l-to-m-th last-success problem with
/// l* = min{j : e_m(j) <= e_{l-1}(j)}.
Solution solve_l_to_m(const SuccessProfile& profile, int ell, int m);

UnimodalityCertificate unimodality_certificate(const StoppingProblem& problem);

}  // namespace bstop
