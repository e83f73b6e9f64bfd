#include "bstop/symfun.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "bstop/errors.hpp"

namespace bstop {

namespace {

void check_order(int j, int max_order) {
    if (j < 0 || j > max_order)
        raise(errc::index_out_of_range,
              "order " + std::to_string(j) + " outside [0," + std::to_string(max_order) + "]");
}

void check_stage(std::size_t k, std::size_t trials) {
    if (k < 1 || k > trials + 1)
        raise(errc::index_out_of_range,
              "stage " + std::to_string(k) + " outside [1," + std::to_string(trials + 1) + "]");
}

double clamp_probability(double v) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    assert(std::fabs(clamped - v) <= 1e-12 && "clamping moved a probability too far");
    return clamped;
}

}  // namespace

double EspTable::e_at(int j, std::size_t k) const {
    check_order(j, max_order);
    check_stage(k, trials);
    return e[static_cast<std::size_t>(j) * (trials + 1) + (k - 1)];
}

double EspTable::s0_at(std::size_t k) const {
    check_stage(k, trials);
    return s0[k - 1];
}

EspTable esp_table(const SuccessProfile& profile, int m) {
    if (m < 0) raise(errc::bad_range, "order m must be >= 0");
    const OddsVector r = odds(profile);  // raises DegenerateTrial when some p_k = 1
    const std::size_t n = profile.trials();

    EspTable table;
    table.trials = n;
    table.max_order = m;
    table.e.assign(static_cast<std::size_t>(m + 1) * (n + 1), 0.0);
    table.s0.assign(n + 1, 0.0);

    auto at = [&](int j, std::size_t k) -> double& {
        return table.e[static_cast<std::size_t>(j) * (n + 1) + (k - 1)];
    };

    for (std::size_t k = 1; k <= n + 1; ++k) at(0, k) = 1.0;
    // e_j(k) = e_j(k+1) + r_k e_{j-1}(k+1), backward from the empty suffix
    for (std::size_t k = n; k >= 1; --k)
        for (int j = 1; j <= m; ++j)
            at(j, k) = at(j, k + 1) + r.odds[k - 1] * at(j - 1, k + 1);

    table.s0[n] = 1.0;
    for (std::size_t k = n; k >= 1; --k) table.s0[k - 1] = profile.q(k) * table.s0[k];
    return table;
}

double s_value(const EspTable& table, int j, std::size_t k) {
    return clamp_probability(table.s0_at(k) * table.e_at(j, k));
}

double u_value(const EspTable& table, int ell, std::size_t k) {
    if (ell < 1 || ell > table.max_order)
        raise(errc::bad_range,
              "ell = " + std::to_string(ell) + " outside [1," + std::to_string(table.max_order) + "]");
    check_stage(k, table.trials);
    double total = 0.0;
    for (int j = ell; j <= table.max_order; ++j) total += s_value(table, j, k);
    return clamp_probability(total);
}

double PmfTable::s_at(int j, std::size_t k) const {
    check_order(j, max_order);
    check_stage(k, trials);
    return s[static_cast<std::size_t>(j) * (trials + 1) + (k - 1)];
}

double PmfTable::u_at(int ell, std::size_t k) const {
    if (ell < 1 || ell > max_order)
        raise(errc::bad_range,
              "ell = " + std::to_string(ell) + " outside [1," + std::to_string(max_order) + "]");
    double total = 0.0;
    for (int j = ell; j <= max_order; ++j) total += s_at(j, k);
    return clamp_probability(total);
}

PmfTable success_pmf(const SuccessProfile& profile, int m) {
    if (m < 0) raise(errc::bad_range, "order m must be >= 0");
    const std::size_t n = profile.trials();

    PmfTable table;
    table.trials = n;
    table.max_order = m;
    table.s.assign(static_cast<std::size_t>(m + 1) * (n + 1), 0.0);

    auto at = [&](int j, std::size_t k) -> double& {
        return table.s[static_cast<std::size_t>(j) * (n + 1) + (k - 1)];
    };

    at(0, n + 1) = 1.0;  // empty suffix: zero successes with certainty
    for (std::size_t k = n; k >= 1; --k) {
        const double p = profile.p(k);
        const double q = 1.0 - p;
        for (int j = 0; j <= m; ++j)
            at(j, k) = (j > 0 ? p * at(j - 1, k + 1) : 0.0) + q * at(j, k + 1);
    }
    return table;
}

}  // namespace bstop
