#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bstop/matrix.hpp"
#include "bstop/sequences.hpp"

namespace bstop {

inline constexpr double kMinorTol = 1e-10;
// Exhaustive enumeration whenever an order has at most this many minors
// (covers every square matrix up to 12x12 at orders <= 4); larger orders
// fall back to a deterministic uniform sample of kMinorSampleCap minors.
inline constexpr std::int64_t kMinorExhaustiveCap = 250000;
inline constexpr std::int64_t kMinorSampleCap = 200000;

enum class MinorSign { positive, negative, indeterminate };

struct OrderReport {
    int order = 0;
    std::int64_t minors_checked = 0;
    double min_minor = 0.0;  // most negative minor / submatrix max-abs entry
    double max_minor = 0.0;
    MinorSign sign = MinorSign::indeterminate;
    bool sampled = false;
};

struct MinorReport {
    int order = 0;                          // highest order inspected
    double min_value = 0.0;                 // most negative normalized minor over all orders
    std::vector<MinorSign> sign_signature;  // epsilon_1..epsilon_r
    std::int64_t minors_checked = 0;        // total over all orders
    bool sampled = false;                   // any order subsampled
    std::vector<OrderReport> per_order;
};

struct TpResult {
    bool tp = false;
    MinorReport report;
};

/// True iff every minor of every order k <= r is >= -tol * scale, where
/// scale is the largest absolute entry of the k x k submatrix.
TpResult is_tp(const Matrix& m, int r, double tol = kMinorTol);

MinorReport sign_signature(const Matrix& m, int r, double tol = kMinorTol);

/// Kernel representation of a sequence: entry (i,j) = a_{i-j}, zero when
/// i-j < 0 or beyond the sequence length.
Matrix kernel_representation(std::span<const double> a, std::size_t size);
Matrix kernel_representation(const ExtendedSequence& a, std::size_t size);

const char* minor_sign_name(MinorSign s);

}  // namespace bstop
