#include "bstop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bstop/chain.hpp"
#include "bstop/errors.hpp"
#include "bstop/symfun.hpp"

namespace bstop {

namespace {

bool tie_ge(double a, double b) {  // a >= b up to the tie tolerance
    return a >= b - kTieRelTol * std::max(1.0, std::fabs(b));
}

bool has_forced_success(const SuccessProfile& profile) {
    for (double p : profile.probs)
        if (p >= 1.0) return true;
    return false;
}

// first index j >= 2 where v[j] > v[j-1] (v is 1-based over trials 1..N);
// infinities follow IEEE comparisons: a drop from +inf is fine, a rise to
// +inf from a finite value is a violation
std::optional<std::size_t> first_increase(const std::vector<double>& v) {
    for (std::size_t j = 2; j < v.size(); ++j) {
        const double prev = v[j - 1];
        const double cur = v[j];
        if (std::isinf(prev)) continue;
        if (std::isinf(cur)) return j;
        if (cur > prev + kTieRelTol * std::max({1.0, std::fabs(prev), std::fabs(cur)})) return j;
    }
    return std::nullopt;
}

std::size_t closed_form_index(const SuccessProfile& profile, int ell, int m) {
    const std::size_t n = profile.trials();
    auto le = [](double a, double b) { return a <= b + kTieRelTol * std::max(1.0, std::fabs(b)); };

    if (has_forced_success(profile)) {
        // odds are unavailable; compare in product form s_m(j) <= s_{ell-1}(j)
        const PmfTable table = success_pmf(profile, m);
        for (std::size_t j = 1; j <= n + 1; ++j)
            if (le(table.s_at(m, j), table.s_at(ell - 1, j))) return j;
    } else {
        const EspTable table = esp_table(profile, m);
        for (std::size_t j = 1; j <= n + 1; ++j)
            if (le(table.e_at(m, j), table.e_at(ell - 1, j))) return j;
    }
    // unreachable: at j = N+1 both sides are 0 (or e_0 = 1)
    raise(errc::internal_inconsistency, "closed-form threshold not found");
}

Solution solve_last_success(const SuccessProfile& profile, int ell, int m) {
    if (ell < 1 || m < ell)
        raise(errc::bad_range,
              "need 1 <= ell <= m, got ell = " + std::to_string(ell) + ", m = " + std::to_string(m));

    StoppingProblem problem = make_problem(profile, l_to_m_payoff(profile, ell, m));
    Solution sol = myopic_stop_set(problem);

    const std::size_t closed = closed_form_index(profile, ell, m);
    const std::size_t t = sol.threshold ? *sol.threshold : profile.trials() + 1;
    // the paper's closed form sits one index above the f-vs-g threshold
    if (closed != t && closed != t + 1)
        raise(errc::internal_inconsistency,
              "closed-form index " + std::to_string(closed) + " vs myopic threshold " +
                  std::to_string(t) + " disagree beyond the documented one-index shift");
    sol.closed_form_index = closed;
    return sol;
}

}  // namespace

Solution myopic_stop_set(const StoppingProblem& problem) {
    const std::size_t n = problem.trials();
    Solution sol;
    sol.g = continuation_backward(problem);

    for (std::size_t k = 1; k <= n; ++k)
        if (tie_ge(problem.f.values[k], sol.g.values[k])) sol.stop_set.push_back(k);

    if (!sol.stop_set.empty()) {
        sol.threshold = sol.stop_set.front();
        sol.value = sol.g.values[*sol.threshold - 1];
    } else {
        sol.value = problem.f.terminal;  // never stopping
    }

    sol.certificates.f_unimodal = is_unimodal(problem.f).unimodal;
    sol.certificates.g_unimodal = is_unimodal(sol.g).unimodal;
    const FergusonReport ferguson = ferguson_check(problem.f, sol.g);
    sol.certificates.ferguson_diff = ferguson.diff_nonincreasing;
    sol.certificates.ferguson_ratio = ferguson.ratio_nonincreasing;
    sol.certificates.monotone_stop_set =
        sol.stop_set.empty() || sol.stop_set.size() == n - sol.stop_set.front() + 1;
    return sol;
}

FergusonReport ferguson_check(const ExtendedSequence& f, const ExtendedSequence& g,
                              const std::optional<std::pair<ExtendedSequence, double>>& h_w) {
    if (f.values.size() != g.values.size())
        raise(errc::dimension_mismatch, "f and g must span the same states");
    const std::size_t n = f.values.size() - 1;

    FergusonReport rep;
    std::vector<double> diff(n + 1, 0.0);   // 1-based over trials
    std::vector<double> ratio(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        diff[k] = g.values[k] - f.values[k];
        ratio[k] = f.values[k] == 0.0 ? std::numeric_limits<double>::infinity()
                                      : g.values[k] / f.values[k];
    }

    const auto diff_violation = first_increase(diff);
    const auto ratio_violation = first_increase(ratio);
    rep.diff_nonincreasing = !diff_violation.has_value();
    rep.ratio_nonincreasing = !ratio_violation.has_value();

    std::optional<std::size_t> first = diff_violation;
    if (ratio_violation && (!first || *ratio_violation < *first)) first = ratio_violation;

    if (h_w) {
        const auto& [h, w] = *h_w;
        if (!(w >= 0.0 && w < 1.0))
            raise(errc::bad_w, "w = " + std::to_string(w) + " outside [0,1)");
        if (h.values.size() != f.values.size())
            raise(errc::dimension_mismatch, "h must span the same states as f");
        for (std::size_t k = 0; k <= n; ++k) {
            const double expect = h.values[k] + w * f.values[k];
            if (std::fabs(g.values[k] - expect) > 1e-10 * std::max(1.0, std::fabs(expect)))
                raise(errc::bad_decomposition,
                      "g != h + w f at index " + std::to_string(k));
        }
        if (std::fabs(g.terminal - (h.terminal + w * f.terminal)) > 1e-10)
            raise(errc::bad_decomposition, "g != h + w f at the terminal state");

        rep.corollary_w = w;
        std::vector<double> h_ratio(n + 1, 0.0);
        for (std::size_t k = 1; k <= n; ++k)
            h_ratio[k] = f.values[k] == 0.0 ? std::numeric_limits<double>::infinity()
                                            : h.values[k] / f.values[k];
        const auto h_violation = first_increase(h_ratio);
        rep.corollary_h_ratio_nonincreasing = !h_violation.has_value();
        if (h_violation && (!first || *h_violation < *first)) first = h_violation;
    }

    rep.first_violation = first;
    return rep;
}

ExtendedSequence mth_last_payoff(const SuccessProfile& profile, int m) {
    if (m < 1) raise(errc::bad_range, "m must be >= 1");
    return l_to_m_payoff(profile, m, m);
}

ExtendedSequence l_to_m_payoff(const SuccessProfile& profile, int ell, int m) {
    if (ell < 1 || m < ell)
        raise(errc::bad_range,
              "need 1 <= ell <= m, got ell = " + std::to_string(ell) + ", m = " + std::to_string(m));
    const std::size_t n = profile.trials();
    std::vector<double> f(n + 1, 0.0);

    if (has_forced_success(profile)) {
        const PmfTable table = success_pmf(profile, m);
        for (std::size_t k = 1; k <= n; ++k)
            for (int j = ell - 1; j <= m - 1; ++j) f[k] += table.s_at(j, k + 1);
    } else {
        const EspTable table = esp_table(profile, m);
        for (std::size_t k = 1; k <= n; ++k)
            for (int j = ell - 1; j <= m - 1; ++j) f[k] += s_value(table, j, k + 1);
    }
    return ExtendedSequence(std::move(f), 0.0);
}

Solution solve_mth_last(const SuccessProfile& profile, int m) {
    if (m < 1) raise(errc::bad_range, "m must be >= 1");
    return solve_last_success(profile, m, m);
}

Solution solve_l_to_m(const SuccessProfile& profile, int ell, int m) {
    return solve_last_success(profile, ell, m);
}

UnimodalityCertificate unimodality_certificate(const StoppingProblem& problem) {
    UnimodalityCertificate cert;
    cert.f_unimodal = is_unimodal(problem.f).unimodal;
    cert.g_unimodal = is_unimodal(continuation_backward(problem)).unimodal;
    cert.myopic_optimal_claim = cert.f_unimodal || cert.g_unimodal;
    return cert;
}

}  // namespace bstop
