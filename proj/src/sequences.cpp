#include "bstop/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bstop/errors.hpp"

namespace bstop {

namespace {

int classify(double x, double zero_tol) {
    if (x > zero_tol) return +1;
    if (x < -zero_tol) return -1;
    return 0;
}

// near-equality at the mode-plateau tolerance
bool plateau_eq(double a, double b, double rel_tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= rel_tol * scale;
}

}  // namespace

ExtendedSequence::ExtendedSequence(std::vector<double> vals, double term)
    : values(std::move(vals)), terminal(term) {
    if (values.empty()) raise(errc::empty_profile, "extended sequence needs at least one value");
    for (double v : values)
        if (!std::isfinite(v)) raise(errc::out_of_range, "non-finite entry in sequence");
    if (!std::isfinite(terminal)) raise(errc::out_of_range, "non-finite terminal value");
}

std::vector<double> ExtendedSequence::flat() const {
    std::vector<double> out(values);
    out.push_back(terminal);
    return out;
}

int sign_changes(std::span<const double> u, double zero_tol) {
    int changes = 0;
    int last = 0;
    for (double x : u) {
        const int s = classify(x, zero_tol);
        if (s == 0) continue;  // zero terms removed
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

SignPattern sign_pattern(std::span<const double> u, double zero_tol) {
    SignPattern pattern;
    int last = 0;
    for (double x : u) {
        const int s = classify(x, zero_tol);
        if (s == 0 || s == last) continue;
        pattern.push_back(s > 0 ? Sign::plus : Sign::minus);
        last = s;
    }
    return pattern;
}

UnimodalResult is_unimodal(std::span<const double> u, double rel_tol) {
    UnimodalResult res;
    const std::size_t n = u.size();
    if (n == 0) return res;

    const double top = *std::max_element(u.begin(), u.end());

    // maximal contiguous argmax run; a second separated run means bimodal
    std::size_t lo = n, hi = n;
    bool separated = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (plateau_eq(u[i], top, rel_tol)) {
            if (lo == n) {
                lo = hi = i;
            } else if (i == hi + 1) {
                hi = i;
            } else {
                separated = true;
                break;
            }
        }
    }
    if (separated || lo == n) return res;

    const double slack_scale = std::max(1.0, std::fabs(top));
    const double slack = rel_tol * slack_scale;
    for (std::size_t j = 0; j < lo; ++j)
        if (u[j] > u[j + 1] + slack) return res;  // must be nondecreasing before the modes
    for (std::size_t j = hi; j + 1 < n; ++j)
        if (u[j] < u[j + 1] - slack) return res;  // must be nonincreasing after the modes

    res.unimodal = true;
    res.modes = {lo, hi};
    return res;
}

LambdaProfile lambda_profile(std::span<const double> u, double zero_tol) {
    if (u.empty()) raise(errc::empty_profile, "lambda_profile of empty sequence");

    std::vector<double> distinct(u.begin(), u.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // S(u - lambda) is constant between consecutive distinct values, so the
    // midpoints plus one level outside each end cover every possible count.
    std::vector<double> levels;
    levels.push_back(distinct.front() - 1.0);
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
        levels.push_back(0.5 * (distinct[i] + distinct[i + 1]));
    levels.push_back(distinct.back() + 1.0);

    LambdaProfile prof;
    std::vector<double> shifted(u.size());
    for (double lam : levels) {
        for (std::size_t i = 0; i < u.size(); ++i) shifted[i] = u[i] - lam;
        prof.levels.push_back(lam);
        prof.counts.push_back(sign_changes(shifted, zero_tol));
        prof.patterns.push_back(sign_pattern(shifted, zero_tol));
    }
    prof.max_changes = *std::max_element(prof.counts.begin(), prof.counts.end());
    return prof;
}

std::vector<double> LambdaProfile::argmax_levels() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (counts[i] == max_changes) out.push_back(levels[i]);
    return out;
}

std::vector<SignPattern> LambdaProfile::argmax_patterns() const {
    std::vector<SignPattern> out;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (counts[i] == max_changes) out.push_back(patterns[i]);
    return out;
}

int sign_changes(const ExtendedSequence& u) { return sign_changes(std::span<const double>(u.flat())); }
SignPattern sign_pattern(const ExtendedSequence& u) { return sign_pattern(std::span<const double>(u.flat())); }
UnimodalResult is_unimodal(const ExtendedSequence& u) { return is_unimodal(std::span<const double>(u.flat())); }
LambdaProfile lambda_profile(const ExtendedSequence& u) { return lambda_profile(std::span<const double>(u.flat())); }

char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

std::string pattern_string(const SignPattern& p) {
    std::string out;
    out.reserve(p.size());
    for (Sign s : p) out.push_back(sign_char(s));
    return out;
}

}  // namespace bstop
