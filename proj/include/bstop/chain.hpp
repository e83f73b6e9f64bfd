#pragma once

#include <cstddef>
#include <vector>

#include "bstop/matrix.hpp"
#include "bstop/profiles.hpp"
#include "bstop/sequences.hpp"

namespace bstop {

/// One-step transition matrix of the chain embedded in success epochs,
/// over the extended state set {0,...,N,inf}. Finite states are strictly
/// upper triangular; the last row/column is the absorbing state. Rows are
/// stochastic by construction: the absorbing entry is 1 minus the finite
/// row sum, clamped at 0.
struct TransitionMatrix {
    Matrix p;            // (N+2) x (N+2)
    std::size_t trials;  // N

    std::size_t dim() const { return trials + 2; }
    std::size_t absorbing() const { return trials + 1; }
};

TransitionMatrix transition_matrix(const SuccessProfile& profile);

/// P^n f by n successive matrix-vector products.
ExtendedSequence apply(const TransitionMatrix& tm, const ExtendedSequence& f, int n);

/// The continuation payoff by the backward recursion
/// g_{k-1} = p_k f_k + (1 - p_k) g_k with g_N = f_inf; agrees with
/// apply(P, f, 1) on every state.
ExtendedSequence continuation_backward(const StoppingProblem& problem);

/// D1 P D2^{-1} = O with diagonal scalings D1 = diag(1, q_1, q_1 q_2, ...)
/// and D2 = diag(1, p_1, p_2 q_1, ...), using p_inf = 1 for the absorbing
/// column. O matches the all-ones pattern: ones strictly above the diagonal
/// plus a single diagonal one in the absorbing corner.
struct Decomposition {
    std::vector<double> d1;  // diagonal of D1, length N+2
    std::vector<double> d2;  // diagonal of D2, length N+2
    Matrix o;
};

Decomposition decompose(const TransitionMatrix& tm, const SuccessProfile& profile);

/// The exact 0/1 pattern O must match, for tests and certification.
Matrix decomposition_pattern(std::size_t dim);

}  // namespace bstop
