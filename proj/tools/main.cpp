#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bstop/chain.hpp"
#include "bstop/errors.hpp"
#include "bstop/oracle.hpp"
#include "bstop/problem_io.hpp"
#include "bstop/profiles.hpp"
#include "bstop/sequences.hpp"
#include "bstop/solver.hpp"
#include "bstop/totalpos.hpp"

namespace {

using namespace bstop;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInconsistency = 3;
constexpr int kExitUncertified = 4;

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out.empty() ? "-" : out;
}

void print_existence(const ExistenceReport& rep) {
    std::cout << "sum_f: " << num12(rep.sum_f) << "\n"
              << "sum_p: " << num12(rep.sum_p) << "\n"
              << "sum_fp: " << num12(rep.sum_fp) << "\n";
    if (rep.tail_bound)
        std::cout << "tail_bound: " << num12(*rep.tail_bound) << "\n";
    else
        std::cout << "tail_bound: absent\n";
    std::cout << "existence_i_sum_f: " << (rep.cond_sum_f ? "certified" : "uncertified") << "\n"
              << "existence_ii_sum_p: " << (rep.cond_sum_p ? "certified" : "uncertified") << "\n"
              << "existence_iii_sum_fp: " << (rep.cond_sum_fp ? "certified" : "uncertified")
              << (rep.limit_heuristic ? " (limit heuristic: last f_k = " + num12(rep.last_f) + ")"
                                      : "")
              << "\n";
}

void print_solution(const StoppingProblem& problem, const Solution& sol, const char* closed_label) {
    if (sol.threshold)
        std::cout << "threshold: " << *sol.threshold << "\n";
    else
        std::cout << "threshold: never\n";
    std::cout << "stop_set: " << join_indices(sol.stop_set) << "\n"
              << "value: " << num12(sol.value) << "\n"
              << "f_unimodal: " << yesno(sol.certificates.f_unimodal) << "\n"
              << "g_unimodal: " << yesno(sol.certificates.g_unimodal) << "\n"
              << "ferguson_ratio: " << yesno(sol.certificates.ferguson_ratio) << "\n"
              << "ferguson_diff: " << yesno(sol.certificates.ferguson_diff) << "\n"
              << "monotone_stop_set: " << yesno(sol.certificates.monotone_stop_set) << "\n";
    if (sol.closed_form_index)
        std::cout << closed_label << ": " << *sol.closed_form_index << "\n";
    else
        std::cout << closed_label << ": n/a\n";
    print_existence(existence_check(problem));

    std::cout << "k\tf_k\tg_k\tstop\n";
    for (std::size_t k = 0; k < problem.f.values.size(); ++k) {
        const bool stops = std::binary_search(sol.stop_set.begin(), sol.stop_set.end(), k);
        std::cout << k << '\t' << num12(problem.f.values[k]) << '\t' << num12(sol.g.values[k])
                  << '\t' << (stops ? "yes" : "-") << "\n";
    }
    std::cout << "inf\t" << num12(problem.f.terminal) << '\t' << num12(sol.g.terminal) << "\t-\n";
}

struct SolveOutput {
    Solution sol;
    const char* closed_label;
};

SolveOutput solve_spec(const ProblemSpec& spec, const StoppingProblem& problem) {
    switch (spec.objective.kind) {
        case Objective::Kind::mth_last:
            return {solve_mth_last(spec.profile, spec.objective.m), "closed_form_k_star"};
        case Objective::Kind::l_to_m:
            return {solve_l_to_m(spec.profile, spec.objective.ell, spec.objective.m),
                    "closed_form_l_star"};
        case Objective::Kind::custom_f:
            return {myopic_stop_set(problem), "closed_form_index"};
    }
    raise(errc::parse_error, "unreachable objective kind");
}

int cmd_solve(const std::string& path, bool emit) {
    const ProblemSpec spec = load_problem_file(path);
    if (emit) {
        std::cout << emit_canonical(spec);
        return kExitOk;
    }
    const StoppingProblem problem = build_problem(spec);
    const SolveOutput out = solve_spec(spec, problem);
    print_solution(problem, out.sol, out.closed_label);
    return kExitOk;
}

int cmd_simulate(const std::string& path, bool emit, std::optional<std::uint64_t> seed_flag,
                 std::optional<std::uint64_t> reps_flag) {
    const ProblemSpec spec = load_problem_file(path);
    if (emit) {
        std::cout << emit_canonical(spec);
        return kExitOk;
    }
    const StoppingProblem problem = build_problem(spec);
    const SolveOutput out = solve_spec(spec, problem);

    const std::uint64_t seed = seed_flag ? *seed_flag : spec.seed.value_or(0);
    const std::uint64_t reps = reps_flag ? *reps_flag : spec.replicates.value_or(100000);
    const SimEstimate est = simulate(problem, out.sol.stop_set, reps, seed);

    std::cout << "replicates: " << est.replicates << "\n"
              << "seed: " << est.seed << "\n"
              << "mean: " << num12(est.mean) << "\n"
              << "std_error: " << (est.replicates > 1 ? num12(est.std_error) : "n/a") << "\n"
              << "analytic_value: " << num12(out.sol.value) << "\n";
    if (est.std_error > 0.0)
        std::cout << "z: " << num12((est.mean - out.sol.value) / est.std_error) << "\n";
    else
        std::cout << "z: n/a\n";
    return kExitOk;
}

int cmd_analyze() {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(std::cin, line)) {
        ++line_no;
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;  // blank line
        const auto end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            std::cerr << "analyze: line " << line_no << ": cannot parse \"" << token << "\"\n";
            return kExitInput;
        }
    }
    if (values.empty()) {
        std::cerr << "analyze: no input values\n";
        return kExitInput;
    }

    const std::span<const double> u(values);
    const auto uni = is_unimodal(u);
    const auto prof = lambda_profile(u);

    std::cout << "n: " << values.size() << "\n"
              << "sign_changes: " << sign_changes(u) << "\n"
              << "sign_pattern: " << pattern_string(sign_pattern(u)) << "\n"
              << "unimodal: " << yesno(uni.unimodal) << "\n";
    if (uni.unimodal)
        std::cout << "modes: [" << uni.modes.lo << "," << uni.modes.hi << "]\n";
    else
        std::cout << "modes: n/a\n";
    std::cout << "lambda_max_sign_changes: " << prof.max_changes << "\n";
    const auto levels = prof.argmax_levels();
    const auto patterns = prof.argmax_patterns();
    for (std::size_t i = 0; i < levels.size(); ++i)
        std::cout << "lambda_argmax: " << num12(levels[i]) << " pattern "
                  << pattern_string(patterns[i]) << "\n";
    return kExitOk;
}

int cmd_tpcheck(const std::string& path, int order, double tol, bool emit) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) raise(errc::parse_error, "empty input file");

    Matrix m;
    if (text[first] == '{') {
        const ProblemSpec spec = parse_problem_text(text);
        if (emit) {
            std::cout << emit_canonical(spec);
            return kExitOk;
        }
        m = transition_matrix(spec.profile).p;
        std::cout << "input: problem file (transition matrix, dim " << m.rows() << ")\n";
    } else {
        m = read_matrix_text(text);
        if (emit) {
            std::cout << write_matrix_text(m);
            return kExitOk;
        }
        std::cout << "input: matrix file (dim " << m.rows() << ")\n";
    }

    const TpResult res = is_tp(m, order, tol);
    bool cumulative = true;
    for (const auto& ord : res.report.per_order) {
        cumulative = cumulative && ord.min_minor >= -tol;
        std::cout << "TP" << ord.order << ": " << yesno(cumulative) << " (minors "
                  << ord.minors_checked << ", min " << num12(ord.min_minor) << ", sign "
                  << minor_sign_name(ord.sign) << (ord.sampled ? ", sampled" : "") << ")\n";
    }
    std::cout << "min_normalized_minor: " << num12(res.report.min_value) << "\n"
              << "minors_checked: " << res.report.minors_checked << "\n"
              << "sampled: " << yesno(res.report.sampled) << "\n";
    return res.report.sampled ? kExitUncertified : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bernoulli optimal stopping: myopic rules, TP certificates, oracles"};
    app.require_subcommand(1);
    bool emit_canonical_flag = false;
    app.add_flag("--emit-canonical", emit_canonical_flag,
                 "print the canonical form of the parsed input and exit");

    std::string solve_file;
    auto* solve = app.add_subcommand("solve", "solve a problem file with the myopic rule");
    solve->add_option("file", solve_file, "problem file (JSON)")->required();

    std::string sim_file;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::uint64_t> sim_reps;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo check of the myopic rule");
    sim->add_option("file", sim_file, "problem file (JSON)")->required();
    sim->add_option("--seed", sim_seed, "RNG seed (default: file seed, else 0)");
    sim->add_option("--replicates", sim_reps, "replicates (default: file value, else 100000)");

    auto* analyze =
        app.add_subcommand("analyze", "sign/unimodality analysis of a sequence on stdin");

    std::string tp_file;
    int tp_order = 0;
    double tp_tol = kMinorTol;
    auto* tp = app.add_subcommand("tpcheck", "certify total positivity of a matrix");
    tp->add_option("file", tp_file, "matrix file (N=<dim> header) or problem file")->required();
    tp->add_option("--order", tp_order, "highest minor order to check")->required();
    tp->add_option("--tol", tp_tol, "normalized minor tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_file, emit_canonical_flag);
        if (sim->parsed()) return cmd_simulate(sim_file, emit_canonical_flag, sim_seed, sim_reps);
        if (analyze->parsed()) return cmd_analyze();
        if (tp->parsed()) return cmd_tpcheck(tp_file, tp_order, tp_tol, emit_canonical_flag);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == errc::internal_inconsistency ? kExitInconsistency : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
