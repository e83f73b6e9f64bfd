#include "bstop/totalpos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "bstop/errors.hpp"

namespace bstop {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// binomial coefficient, saturating at kMinorExhaustiveCap + 1
std::int64_t choose_capped(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > 1e18) return kMinorExhaustiveCap + 1;
    }
    return static_cast<std::int64_t>(std::llround(c));
}

// lexicographic next k-subset of {0..n-1}; false when exhausted
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + 1 <= n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// uniform k-subset of {0..n-1} via Floyd's algorithm, sorted
std::vector<std::size_t> random_subset(std::uint64_t& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = splitmix64(rng) % (j + 1);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
            chosen.push_back(t);
        else
            chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// determinant by LU elimination with partial pivoting; scratch is destroyed
double det_lu(std::vector<double>& a, std::size_t k) {
    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * k + col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double v = std::fabs(a[r * k + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[col * k + j], a[pivot * k + j]);
            det = -det;
        }
        const double d = a[col * k + col];
        det *= d;
        for (std::size_t r = col + 1; r < k; ++r) {
            const double factor = a[r * k + col] / d;
            if (factor == 0.0) continue;
            for (std::size_t j = col + 1; j < k; ++j) a[r * k + j] -= factor * a[col * k + j];
            a[r * k + col] = 0.0;
        }
    }
    return det;
}

struct OrderStats {
    double min_norm = std::numeric_limits<double>::infinity();
    double max_norm = -std::numeric_limits<double>::infinity();
    std::int64_t count = 0;
    bool pos_found = false;
    bool neg_found = false;
};

void inspect_minor(const Matrix& m, const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols, double tol,
                   std::vector<double>& scratch, OrderStats& stats) {
    const std::size_t k = rows.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double v = m(rows[i], cols[j]);
            scratch[i * k + j] = v;
            scale = std::max(scale, std::fabs(v));
        }
    ++stats.count;
    const double norm = scale == 0.0 ? 0.0 : det_lu(scratch, k) / scale;
    stats.min_norm = std::min(stats.min_norm, norm);
    stats.max_norm = std::max(stats.max_norm, norm);
    if (norm > tol) stats.pos_found = true;
    if (norm < -tol) stats.neg_found = true;
}

MinorReport scan_minors(const Matrix& m, int r, double tol) {
    if (r < 1) raise(errc::order_too_large, "order must be >= 1");
    if (static_cast<std::size_t>(r) > std::min(m.rows(), m.cols()))
        raise(errc::order_too_large,
              "order " + std::to_string(r) + " exceeds min(rows, cols) = " +
                  std::to_string(std::min(m.rows(), m.cols())));

    MinorReport report;
    report.order = r;
    report.min_value = std::numeric_limits<double>::infinity();

    for (int order = 1; order <= r; ++order) {
        const std::size_t k = static_cast<std::size_t>(order);
        const std::int64_t total =
            choose_capped(m.rows(), k) * choose_capped(m.cols(), k);
        OrderStats stats;
        std::vector<double> scratch(k * k);
        bool sampled = false;

        if (total <= kMinorExhaustiveCap) {
            std::vector<std::size_t> rows(k), cols(k);
            for (std::size_t i = 0; i < k; ++i) rows[i] = i;
            do {
                for (std::size_t i = 0; i < k; ++i) cols[i] = i;
                do {
                    inspect_minor(m, rows, cols, tol, scratch, stats);
                } while (next_subset(cols, m.cols()));
            } while (next_subset(rows, m.rows()));
        } else {
            sampled = true;
            // deterministic given the same matrix shape and order
            std::uint64_t rng = 0x5eed00d5ULL ^ (m.rows() * 0x10001ULL) ^
                                (m.cols() * 0x4000081ULL) ^ (k * 0x9e3779b9ULL);
            for (std::int64_t s = 0; s < kMinorSampleCap; ++s) {
                const auto rows = random_subset(rng, m.rows(), k);
                const auto cols = random_subset(rng, m.cols(), k);
                inspect_minor(m, rows, cols, tol, scratch, stats);
            }
        }

        OrderReport ord;
        ord.order = order;
        ord.minors_checked = stats.count;
        ord.min_minor = stats.min_norm;
        ord.max_minor = stats.max_norm;
        ord.sampled = sampled;
        if (stats.pos_found && !stats.neg_found)
            ord.sign = MinorSign::positive;
        else if (stats.neg_found && !stats.pos_found)
            ord.sign = MinorSign::negative;
        else
            ord.sign = MinorSign::indeterminate;

        report.per_order.push_back(ord);
        report.sign_signature.push_back(ord.sign);
        report.minors_checked += stats.count;
        report.min_value = std::min(report.min_value, stats.min_norm);
        report.sampled = report.sampled || sampled;
    }
    return report;
}

}  // namespace

TpResult is_tp(const Matrix& m, int r, double tol) {
    MinorReport report = scan_minors(m, r, tol);
    const bool tp = report.min_value >= -tol;
    return TpResult{tp, std::move(report)};
}

MinorReport sign_signature(const Matrix& m, int r, double tol) {
    return scan_minors(m, r, tol);
}

Matrix kernel_representation(std::span<const double> a, std::size_t size) {
    if (size < 1) raise(errc::param_out_of_range, "kernel representation needs size >= 1");
    Matrix m(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const std::size_t shift = i - j;
            if (shift < a.size()) m(i, j) = a[shift];
        }
    return m;
}

Matrix kernel_representation(const ExtendedSequence& a, std::size_t size) {
    const auto flat = a.flat();
    return kernel_representation(std::span<const double>(flat), size);
}

const char* minor_sign_name(MinorSign s) {
    switch (s) {
        case MinorSign::positive: return "+1";
        case MinorSign::negative: return "-1";
        case MinorSign::indeterminate: return "indeterminate";
    }
    return "?";
}

}  // namespace bstop
