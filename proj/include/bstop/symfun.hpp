#pragma once

#include <cstddef>
#include <vector>

#include "bstop/profiles.hpp"

namespace bstop {

/// Elementary symmetric polynomials of the odds over trial suffixes:
/// e[j][k] = e_j(k) = sum over k <= i_1 < ... < i_j <= N of r_{i_1}...r_{i_j},
/// together with s0(k) = prod_{i=k}^{N} q_i. Valid for j = 0..m and
/// k = 1..N+1 (k = N+1 is the empty suffix). Requires every p_k < 1.
struct EspTable {
    std::size_t trials = 0;  // N
    int max_order = 0;       // m

    double e_at(int j, std::size_t k) const;
    double s0_at(std::size_t k) const;

    std::vector<double> e;   // (m+1) x (N+1), row j, column k-1
    std::vector<double> s0;  // N+1 entries, index k-1
};

EspTable esp_table(const SuccessProfile& profile, int m);

/// s_j(k) = s0(k) e_j(k): probability of exactly j successes among trials
/// k..N. Clamped to [0,1].
double s_value(const EspTable& table, int j, std::size_t k);

/// u_m(k; ell) = sum_{j=ell}^{m} s_j(k): probability of between ell and m
/// successes among trials k..N.
double u_value(const EspTable& table, int ell, std::size_t k);

/// The same probabilities computed in probability space,
/// s[j][k] = p_k s[j-1][k+1] + q_k s[j][k+1]; valid for any p_k in [0,1],
/// including forced successes (p_k = 1) where the odds route is undefined.
struct PmfTable {
    std::size_t trials = 0;
    int max_order = 0;

    double s_at(int j, std::size_t k) const;
    double u_at(int ell, std::size_t k) const;

    std::vector<double> s;  // (m+1) x (N+1), row j, column k-1
};

PmfTable success_pmf(const SuccessProfile& profile, int m);

}  // namespace bstop
