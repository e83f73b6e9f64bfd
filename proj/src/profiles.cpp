#include "bstop/profiles.hpp"

#include <cmath>
#include <string>

#include "bstop/errors.hpp"

namespace bstop {

SuccessProfile make_profile(std::vector<double> probs, std::optional<double> tail_bound) {
    if (probs.empty()) raise(errc::empty_profile, "profile needs at least one trial");
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double p = probs[k];
        if (!(p >= 0.0 && p <= 1.0))
            raise(errc::out_of_range,
                  "p_" + std::to_string(k + 1) + " = " + std::to_string(p) + " not in [0,1]");
    }
    if (tail_bound) {
        if (!(*tail_bound >= 0.0) || !std::isfinite(*tail_bound))
            raise(errc::negative_tail, "tail_bound must be a finite nonnegative real");
    }
    return SuccessProfile{std::move(probs), tail_bound};
}

OddsVector odds(const SuccessProfile& profile) {
    OddsVector out;
    out.odds.reserve(profile.trials());
    for (std::size_t k = 1; k <= profile.trials(); ++k) {
        const double p = profile.p(k);
        if (p >= 1.0)
            raise(errc::degenerate_trial, "p_" + std::to_string(k) + " = 1 has infinite odds");
        out.odds.push_back(p / (1.0 - p));
    }
    return out;
}

SuccessProfile truncate_geometric(double c, double q, double eps) {
    if (!(c > 0.0 && c <= 1.0)) raise(errc::param_out_of_range, "c must lie in (0,1]");
    if (!(q > 0.0 && q < 1.0)) raise(errc::param_out_of_range, "q must lie in (0,1)");
    if (!(eps > 0.0)) raise(errc::param_out_of_range, "eps must be positive");

    // tail(N) = c q^{N+1} / (1-q)
    std::size_t n = 1;
    double tail = c * q * q / (1.0 - q);
    while (tail > eps) {
        ++n;
        tail *= q;
    }

    std::vector<double> probs;
    probs.reserve(n);
    double pk = c * q;
    for (std::size_t k = 1; k <= n; ++k) {
        probs.push_back(std::min(pk, 1.0));
        pk *= q;
    }
    return make_profile(std::move(probs), tail);
}

StoppingProblem make_problem(SuccessProfile profile, ExtendedSequence f) {
    if (f.values.size() != profile.trials() + 1)
        raise(errc::dimension_mismatch,
              "payoff length " + std::to_string(f.values.size()) + " != trials+1 = " +
                  std::to_string(profile.trials() + 1));
    if (f.values[0] != 0.0) raise(errc::out_of_range, "f_0 must be 0");
    for (double v : f.values)
        if (v < 0.0) raise(errc::out_of_range, "payoffs must be nonnegative");
    if (f.terminal < 0.0) raise(errc::out_of_range, "terminal payoff must be nonnegative");
    return StoppingProblem{std::move(profile), std::move(f)};
}

ExistenceReport existence_check(const StoppingProblem& problem) {
    ExistenceReport rep;
    const auto& f = problem.f.values;
    const auto& p = problem.profile.probs;
    for (std::size_t k = 1; k <= problem.trials(); ++k) {
        rep.sum_f += f[k];
        rep.sum_p += p[k - 1];
        rep.sum_fp += f[k] * p[k - 1];
    }
    rep.tail_bound = problem.profile.tail_bound;
    rep.last_f = f.back();
    rep.limit_le_terminal = rep.last_f <= problem.f.terminal + 1e-12;

    if (rep.tail_bound) {
        rep.cond_sum_p = true;  // sum p_k <= partial sum + tail_bound < inf
        if (*rep.tail_bound == 0.0) {
            // genuinely finite problem: every sum is a finite sum
            rep.cond_sum_f = true;
            rep.cond_sum_fp = true;
            rep.limit_heuristic = false;
        }
    }
    rep.any_certified = rep.cond_sum_f || rep.cond_sum_p || rep.cond_sum_fp;
    return rep;
}

}  // namespace bstop
