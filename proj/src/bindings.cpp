#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bstop/chain.hpp"
#include "bstop/errors.hpp"
#include "bstop/matrix.hpp"
#include "bstop/oracle.hpp"
#include "bstop/problem_io.hpp"
#include "bstop/profiles.hpp"
#include "bstop/sequences.hpp"
#include "bstop/solver.hpp"
#include "bstop/symfun.hpp"
#include "bstop/totalpos.hpp"

namespace py = pybind11;
using namespace bstop;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) raise(errc::dimension_mismatch, "matrix needs at least one row");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            raise(errc::dimension_mismatch, "ragged rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows[i].assign(m.row(i).begin(), m.row(i).end());
    return rows;
}

std::vector<int> pattern_ints(const SignPattern& p) {
    std::vector<int> out;
    out.reserve(p.size());
    for (Sign s : p) out.push_back(static_cast<int>(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bernoulli optimal stopping: sequences, chains, TP certificates, solvers, oracles";

    py::register_exception<Error>(m, "BstopError");

    py::class_<ExtendedSequence>(m, "ExtendedSequence")
        .def(py::init<std::vector<double>, double>(), py::arg("values"), py::arg("terminal"))
        .def_readonly("values", &ExtendedSequence::values)
        .def_readonly("terminal", &ExtendedSequence::terminal)
        .def("flat", &ExtendedSequence::flat)
        .def("__len__", [](const ExtendedSequence& s) { return s.values.size() + 1; })
        .def("__repr__", [](const ExtendedSequence& s) {
            return "<ExtendedSequence of " + std::to_string(s.values.size()) +
                   " values + terminal>";
        });

    py::class_<ModeInterval>(m, "ModeInterval")
        .def_readonly("lo", &ModeInterval::lo)
        .def_readonly("hi", &ModeInterval::hi);

    py::class_<UnimodalResult>(m, "UnimodalResult")
        .def_readonly("unimodal", &UnimodalResult::unimodal)
        .def_readonly("modes", &UnimodalResult::modes)
        .def("__bool__", [](const UnimodalResult& r) { return r.unimodal; });

    py::class_<LambdaProfile>(m, "LambdaProfile")
        .def_readonly("levels", &LambdaProfile::levels)
        .def_readonly("counts", &LambdaProfile::counts)
        .def_readonly("max_changes", &LambdaProfile::max_changes)
        .def_property_readonly("patterns",
                               [](const LambdaProfile& p) {
                                   std::vector<std::vector<int>> out;
                                   for (const auto& pat : p.patterns)
                                       out.push_back(pattern_ints(pat));
                                   return out;
                               })
        .def("argmax_levels", &LambdaProfile::argmax_levels);

    m.def("sign_changes",
          [](const std::vector<double>& u) { return sign_changes(std::span<const double>(u)); },
          py::arg("u"), "Number of sign changes after removing zero terms.");
    m.def("sign_pattern",
          [](const std::vector<double>& u) {
              return pattern_ints(sign_pattern(std::span<const double>(u)));
          },
          py::arg("u"), "Run-length-compressed sign pattern (+1/-1) after zero removal.");
    m.def("is_unimodal",
          [](const std::vector<double>& u) { return is_unimodal(std::span<const double>(u)); },
          py::arg("u"));
    m.def("is_unimodal",
          [](const ExtendedSequence& u) { return is_unimodal(u); }, py::arg("u"));
    m.def("lambda_profile",
          [](const std::vector<double>& u) { return lambda_profile(std::span<const double>(u)); },
          py::arg("u"));

    py::class_<SuccessProfile>(m, "SuccessProfile")
        .def_readonly("probs", &SuccessProfile::probs)
        .def_readonly("tail_bound", &SuccessProfile::tail_bound)
        .def("trials", &SuccessProfile::trials);

    py::class_<OddsVector>(m, "OddsVector").def_readonly("odds", &OddsVector::odds);

    py::class_<StoppingProblem>(m, "StoppingProblem")
        .def_readonly("profile", &StoppingProblem::profile)
        .def_readonly("f", &StoppingProblem::f)
        .def("trials", &StoppingProblem::trials);

    py::class_<ExistenceReport>(m, "ExistenceReport")
        .def_readonly("sum_f", &ExistenceReport::sum_f)
        .def_readonly("sum_p", &ExistenceReport::sum_p)
        .def_readonly("sum_fp", &ExistenceReport::sum_fp)
        .def_readonly("tail_bound", &ExistenceReport::tail_bound)
        .def_readonly("last_f", &ExistenceReport::last_f)
        .def_readonly("limit_le_terminal", &ExistenceReport::limit_le_terminal)
        .def_readonly("limit_heuristic", &ExistenceReport::limit_heuristic)
        .def_readonly("cond_sum_f", &ExistenceReport::cond_sum_f)
        .def_readonly("cond_sum_p", &ExistenceReport::cond_sum_p)
        .def_readonly("cond_sum_fp", &ExistenceReport::cond_sum_fp)
        .def_readonly("any_certified", &ExistenceReport::any_certified);

    m.def("make_profile", &make_profile, py::arg("probs"),
          py::arg("tail_bound") = std::nullopt);
    m.def("odds", &odds, py::arg("profile"));
    m.def("truncate_geometric", &truncate_geometric, py::arg("c"), py::arg("q"), py::arg("eps"));
    m.def("make_problem", &make_problem, py::arg("profile"), py::arg("f"));
    m.def("existence_check", &existence_check, py::arg("problem"));

    py::class_<Matrix>(m, "Matrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def("rows", &Matrix::rows)
        .def("cols", &Matrix::cols)
        .def("to_rows", &matrix_rows)
        .def("__getitem__",
             [](const Matrix& mat, std::pair<std::size_t, std::size_t> ij) {
                 if (ij.first >= mat.rows() || ij.second >= mat.cols())
                     throw py::index_error();
                 return mat(ij.first, ij.second);
             });
    m.def("matvec",
          [](const Matrix& mat, const std::vector<double>& x) {
              if (x.size() != mat.cols()) raise(errc::dimension_mismatch, "matvec size");
              return matvec(mat, std::span<const double>(x));
          });

    py::class_<TransitionMatrix>(m, "TransitionMatrix")
        .def_readonly("p", &TransitionMatrix::p)
        .def_readonly("trials", &TransitionMatrix::trials)
        .def("dim", &TransitionMatrix::dim);

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("d1", &Decomposition::d1)
        .def_readonly("d2", &Decomposition::d2)
        .def_readonly("o", &Decomposition::o);

    m.def("transition_matrix", &transition_matrix, py::arg("profile"));
    m.def("apply", &apply, py::arg("tm"), py::arg("f"), py::arg("n") = 1);
    m.def("continuation_backward", &continuation_backward, py::arg("problem"));
    m.def("decompose", &decompose, py::arg("tm"), py::arg("profile"));
    m.def("decomposition_pattern", &decomposition_pattern, py::arg("dim"));

    py::enum_<MinorSign>(m, "MinorSign")
        .value("positive", MinorSign::positive)
        .value("negative", MinorSign::negative)
        .value("indeterminate", MinorSign::indeterminate);

    py::class_<OrderReport>(m, "OrderReport")
        .def_readonly("order", &OrderReport::order)
        .def_readonly("minors_checked", &OrderReport::minors_checked)
        .def_readonly("min_minor", &OrderReport::min_minor)
        .def_readonly("max_minor", &OrderReport::max_minor)
        .def_readonly("sign", &OrderReport::sign)
        .def_readonly("sampled", &OrderReport::sampled);

    py::class_<MinorReport>(m, "MinorReport")
        .def_readonly("order", &MinorReport::order)
        .def_readonly("min_value", &MinorReport::min_value)
        .def_readonly("sign_signature", &MinorReport::sign_signature)
        .def_readonly("minors_checked", &MinorReport::minors_checked)
        .def_readonly("sampled", &MinorReport::sampled)
        .def_readonly("per_order", &MinorReport::per_order);

    py::class_<TpResult>(m, "TpResult")
        .def_readonly("tp", &TpResult::tp)
        .def_readonly("report", &TpResult::report)
        .def("__bool__", [](const TpResult& r) { return r.tp; });

    m.def("is_tp", &is_tp, py::arg("m"), py::arg("r"), py::arg("tol") = kMinorTol);
    m.def("sign_signature", &sign_signature, py::arg("m"), py::arg("r"),
          py::arg("tol") = kMinorTol);
    m.def("kernel_representation",
          [](const std::vector<double>& a, std::size_t size) {
              return kernel_representation(std::span<const double>(a), size);
          },
          py::arg("a"), py::arg("size"));

    py::class_<EspTable>(m, "EspTable")
        .def_readonly("trials", &EspTable::trials)
        .def_readonly("max_order", &EspTable::max_order)
        .def("e_at", &EspTable::e_at, py::arg("j"), py::arg("k"))
        .def("s0_at", &EspTable::s0_at, py::arg("k"));

    py::class_<PmfTable>(m, "PmfTable")
        .def_readonly("trials", &PmfTable::trials)
        .def_readonly("max_order", &PmfTable::max_order)
        .def("s_at", &PmfTable::s_at, py::arg("j"), py::arg("k"))
        .def("u_at", &PmfTable::u_at, py::arg("ell"), py::arg("k"));

    m.def("esp_table", &esp_table, py::arg("profile"), py::arg("m"));
    m.def("s_value", &s_value, py::arg("table"), py::arg("j"), py::arg("k"));
    m.def("u_value", &u_value, py::arg("table"), py::arg("ell"), py::arg("k"));
    m.def("success_pmf", &success_pmf, py::arg("profile"), py::arg("m"));

    py::class_<Certificates>(m, "Certificates")
        .def_readonly("f_unimodal", &Certificates::f_unimodal)
        .def_readonly("g_unimodal", &Certificates::g_unimodal)
        .def_readonly("ferguson_ratio", &Certificates::ferguson_ratio)
        .def_readonly("ferguson_diff", &Certificates::ferguson_diff)
        .def_readonly("monotone_stop_set", &Certificates::monotone_stop_set);

    py::class_<Solution>(m, "Solution")
        .def_readonly("stop_set", &Solution::stop_set)
        .def_readonly("threshold", &Solution::threshold)
        .def_readonly("value", &Solution::value)
        .def_readonly("certificates", &Solution::certificates)
        .def_readonly("g", &Solution::g)
        .def_readonly("closed_form_index", &Solution::closed_form_index);

    py::class_<FergusonReport>(m, "FergusonReport")
        .def_readonly("diff_nonincreasing", &FergusonReport::diff_nonincreasing)
        .def_readonly("ratio_nonincreasing", &FergusonReport::ratio_nonincreasing)
        .def_readonly("first_violation", &FergusonReport::first_violation)
        .def_readonly("corollary_w", &FergusonReport::corollary_w)
        .def_readonly("corollary_h_ratio_nonincreasing",
                      &FergusonReport::corollary_h_ratio_nonincreasing);

    py::class_<UnimodalityCertificate>(m, "UnimodalityCertificate")
        .def_readonly("f_unimodal", &UnimodalityCertificate::f_unimodal)
        .def_readonly("g_unimodal", &UnimodalityCertificate::g_unimodal)
        .def_readonly("myopic_optimal_claim", &UnimodalityCertificate::myopic_optimal_claim);

    m.def("myopic_stop_set", &myopic_stop_set, py::arg("problem"));
    m.def("ferguson_check", &ferguson_check, py::arg("f"), py::arg("g"),
          py::arg("h_w") = std::nullopt);
    m.def("mth_last_payoff", &mth_last_payoff, py::arg("profile"), py::arg("m"));
    m.def("l_to_m_payoff", &l_to_m_payoff, py::arg("profile"), py::arg("ell"), py::arg("m"));
    m.def("solve_mth_last", &solve_mth_last, py::arg("profile"), py::arg("m"));
    m.def("solve_l_to_m", &solve_l_to_m, py::arg("profile"), py::arg("ell"), py::arg("m"));
    m.def("unimodality_certificate", &unimodality_certificate, py::arg("problem"));

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("value", &OracleResult::value)
        .def_readonly("stop_set", &OracleResult::stop_set)
        .def_readonly("continuation", &OracleResult::continuation);

    py::class_<ThresholdSweep>(m, "ThresholdSweep")
        .def_readonly("values", &ThresholdSweep::values)
        .def_readonly("best_thresholds", &ThresholdSweep::best_thresholds)
        .def_readonly("best_value", &ThresholdSweep::best_value);

    py::class_<SimEstimate>(m, "SimEstimate")
        .def_readonly("mean", &SimEstimate::mean)
        .def_readonly("std_error", &SimEstimate::std_error)
        .def_readonly("replicates", &SimEstimate::replicates)
        .def_readonly("seed", &SimEstimate::seed);

    m.def("dp_solve", &dp_solve, py::arg("problem"));
    m.def("threshold_sweep", &threshold_sweep, py::arg("problem"));
    m.def("simulate",
          [](const StoppingProblem& problem, const std::vector<std::size_t>& stop_set,
             std::uint64_t replicates, std::uint64_t seed) {
              return simulate(problem, std::span<const std::size_t>(stop_set), replicates, seed);
          },
          py::arg("problem"), py::arg("stop_set"), py::arg("replicates"), py::arg("seed"));
    m.def("counter_hash", &counter_hash, py::arg("seed"), py::arg("replicate"), py::arg("trial"));
    m.def("uniform01", &uniform01, py::arg("hash"));

    m.def("parse_problem_text", &parse_problem_text, py::arg("text"));
    m.def("emit_canonical", &emit_canonical, py::arg("spec"));
    m.def("build_problem", &build_problem, py::arg("spec"));

    py::class_<Objective>(m, "Objective")
        .def_readonly("m", &Objective::m)
        .def_readonly("ell", &Objective::ell)
        .def_readonly("f", &Objective::f)
        .def_readonly("f_inf", &Objective::f_inf);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_readonly("profile", &ProblemSpec::profile)
        .def_readonly("objective", &ProblemSpec::objective)
        .def_readonly("seed", &ProblemSpec::seed)
        .def_readonly("replicates", &ProblemSpec::replicates);
}
