#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bstop {

// |x| <= kSignZeroTol counts as a zero term when classifying signs.
inline constexpr double kSignZeroTol = 1e-12;
// Relative tolerance for plateau equality in mode-interval detection.
inline constexpr double kModeRelTol = 1e-10;

/// A finite real sequence indexed 0..N plus the value at the absorbing
/// terminal state. The terminal participates in all sign/monotonicity
/// analysis as the last element.
struct ExtendedSequence {
    std::vector<double> values;  // indices 0..N
    double terminal = 0.0;

    ExtendedSequence() = default;
    ExtendedSequence(std::vector<double> vals, double term);

    std::size_t trailing_index() const { return values.size(); }

    // values followed by terminal, as one flat vector
    std::vector<double> flat() const;
};

struct ModeInterval {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

enum class Sign : int { minus = -1, plus = +1 };
using SignPattern = std::vector<Sign>;

struct UnimodalResult {
    bool unimodal = false;
    ModeInterval modes;  // meaningful only when unimodal
};

struct LambdaProfile {
    std::vector<double> levels;         // candidate shifts, ascending
    std::vector<int> counts;            // sign changes of u - level
    std::vector<SignPattern> patterns;  // compressed pattern at each level
    int max_changes = 0;

    // levels achieving max_changes, with their patterns
    std::vector<double> argmax_levels() const;
    std::vector<SignPattern> argmax_patterns() const;
};

int sign_changes(std::span<const double> u, double zero_tol = kSignZeroTol);
SignPattern sign_pattern(std::span<const double> u, double zero_tol = kSignZeroTol);
UnimodalResult is_unimodal(std::span<const double> u, double rel_tol = kModeRelTol);
LambdaProfile lambda_profile(std::span<const double> u, double zero_tol = kSignZeroTol);

int sign_changes(const ExtendedSequence& u);
SignPattern sign_pattern(const ExtendedSequence& u);
UnimodalResult is_unimodal(const ExtendedSequence& u);
LambdaProfile lambda_profile(const ExtendedSequence& u);

char sign_char(Sign s);
std::string pattern_string(const SignPattern& p);

}  // namespace bstop
