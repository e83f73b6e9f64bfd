#include "bstop/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bstop/errors.hpp"

namespace bstop {

namespace {

// Running products of q_k are stable directly unless the factors are tiny
// and the horizon long; then log space keeps relative information.
bool use_log_products(const SuccessProfile& profile) {
    if (profile.trials() <= 100) return false;
    double min_q = 1.0;
    for (double p : profile.probs) min_q = std::min(min_q, 1.0 - p);
    return min_q < 1e-3;
}

}  // namespace

TransitionMatrix transition_matrix(const SuccessProfile& profile) {
    const std::size_t n = profile.trials();
    const std::size_t dim = n + 2;
    const std::size_t inf = n + 1;
    Matrix p(dim, dim);

    for (std::size_t i = 0; i <= n; ++i) {
        double tail_product = 1.0;  // prod_{k=i+1}^{j-1} q_k
        double row_sum = 0.0;
        for (std::size_t j = i + 1; j <= n; ++j) {
            const double entry = profile.p(j) * tail_product;
            p(i, j) = entry;
            row_sum += entry;
            tail_product *= profile.q(j);
        }
        p(i, inf) = std::max(0.0, 1.0 - row_sum);
    }
    p(inf, inf) = 1.0;
    return TransitionMatrix{std::move(p), n};
}

ExtendedSequence apply(const TransitionMatrix& tm, const ExtendedSequence& f, int n) {
    if (n < 1) raise(errc::param_out_of_range, "apply needs n >= 1");
    if (f.values.size() + 1 != tm.dim())
        raise(errc::dimension_mismatch,
              "sequence over " + std::to_string(f.values.size() + 1) + " states, matrix dim " +
                  std::to_string(tm.dim()));

    std::vector<double> x = f.flat();
    for (int step = 0; step < n; ++step) x = matvec(tm.p, x);

    const double terminal = x.back();
    x.pop_back();
    return ExtendedSequence(std::move(x), terminal);
}

ExtendedSequence continuation_backward(const StoppingProblem& problem) {
    const std::size_t n = problem.trials();
    std::vector<double> g(n + 1, 0.0);
    g[n] = problem.f.terminal;  // from state N the only move is to the absorbing state
    for (std::size_t k = n; k >= 1; --k)
        g[k - 1] = problem.profile.p(k) * problem.f.values[k] + problem.profile.q(k) * g[k];
    return ExtendedSequence(std::move(g), problem.f.terminal);
}

Decomposition decompose(const TransitionMatrix& tm, const SuccessProfile& profile) {
    const std::size_t n = profile.trials();
    if (n != tm.trials) raise(errc::dimension_mismatch, "profile and matrix disagree");
    for (std::size_t k = 1; k <= n; ++k) {
        const double p = profile.p(k);
        if (p <= 0.0 || p >= 1.0)
            raise(errc::singular_scaling,
                  "p_" + std::to_string(k) + " = " + std::to_string(p) +
                      " makes the diagonal scaling singular; need p in (0,1)");
    }

    const std::size_t dim = tm.dim();
    const std::size_t inf = tm.absorbing();
    Decomposition dec;
    dec.d1.resize(dim);
    dec.d2.resize(dim);

    if (use_log_products(profile)) {
        std::vector<double> log_prefix(n + 1, 0.0);  // log prod_{k=1}^{i} q_k
        for (std::size_t i = 1; i <= n; ++i)
            log_prefix[i] = log_prefix[i - 1] + std::log(profile.q(i));
        for (std::size_t i = 0; i <= n; ++i) dec.d1[i] = std::exp(log_prefix[i]);
        dec.d1[inf] = std::exp(log_prefix[n]);
        dec.d2[0] = 1.0;
        for (std::size_t j = 1; j <= n; ++j)
            dec.d2[j] = std::exp(std::log(profile.p(j)) + log_prefix[j - 1]);
        dec.d2[inf] = std::exp(log_prefix[n]);  // p_inf = 1
    } else {
        double prefix = 1.0;  // prod_{k=1}^{i} q_k
        dec.d1[0] = 1.0;
        dec.d2[0] = 1.0;
        for (std::size_t j = 1; j <= n; ++j) {
            dec.d2[j] = profile.p(j) * prefix;
            prefix *= profile.q(j);
            dec.d1[j] = prefix;
        }
        dec.d1[inf] = prefix;
        dec.d2[inf] = prefix;  // p_inf = 1
    }

    dec.o = Matrix(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (tm.p(i, j) != 0.0) dec.o(i, j) = dec.d1[i] * tm.p(i, j) / dec.d2[j];
    return dec;
}

Matrix decomposition_pattern(std::size_t dim) {
    Matrix o(dim, dim);
    for (std::size_t i = 0; i + 1 < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) o(i, j) = 1.0;
    o(dim - 1, dim - 1) = 1.0;
    return o;
}

}  // namespace bstop
