#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bstop/matrix.hpp"
#include "bstop/profiles.hpp"

namespace bstop {

/// Parsed problem file: a profile (explicit or geometric family), an
/// objective, and optional simulation defaults. Unknown keys are rejected.
struct Objective {
    enum class Kind { mth_last, l_to_m, custom_f };
    Kind kind = Kind::mth_last;
    int m = 1;
    int ell = 1;
    std::vector<double> f;  // custom_f only: f_0..f_N
    double f_inf = 0.0;     // custom_f only
};

struct ProblemSpec {
    SuccessProfile profile;
    Objective objective;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replicates;
};

ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec load_problem_file(const std::string& path);

/// Canonical serialization: geometric families are expanded to explicit
/// probs + tail_bound; re-parsing yields an identical StoppingProblem.
std::string emit_canonical(const ProblemSpec& spec);

/// Builds the stopping payoff from the objective.
StoppingProblem build_problem(const ProblemSpec& spec);

/// Plain-text matrix format: first line "N=<dim>", then dim tab-separated
/// rows.
std::string write_matrix_text(const Matrix& m);
Matrix read_matrix_text(const std::string& text);

/// Fixed 12-significant-digit rendering used by all numeric CLI output.
std::string num12(double v);

}  // namespace bstop
