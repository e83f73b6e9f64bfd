#include "bstop/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bstop/errors.hpp"
#include "bstop/solver.hpp"

namespace bstop {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            raise(errc::parse_error, std::string("unknown key \"") + key + "\" in " + where);
    }
}

double require_number(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        raise(errc::parse_error, std::string("missing key \"") + key + "\" in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number())
        raise(errc::parse_error, std::string("key \"") + key + "\" in " + where + " must be a number");
    return v.get<double>();
}

int require_int(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        raise(errc::parse_error, std::string("missing key \"") + key + "\" in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        raise(errc::parse_error, std::string("key \"") + key + "\" in " + where + " must be an integer");
    return v.get<int>();
}

std::vector<double> require_number_array(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        raise(errc::parse_error, std::string("missing key \"") + key + "\" in " + where);
    const auto& v = obj.at(key);
    if (!v.is_array())
        raise(errc::parse_error, std::string("key \"") + key + "\" in " + where + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            raise(errc::parse_error, std::string("array \"") + key + "\" in " + where +
                                         " must hold numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

SuccessProfile parse_profile(const json& obj) {
    if (!obj.is_object()) raise(errc::parse_error, "\"profile\" must be an object");
    if (obj.contains("family")) {
        reject_unknown_keys(obj, {"family", "c", "q", "eps"}, "profile");
        if (obj.at("family").get<std::string>() != "geometric")
            raise(errc::parse_error, "unknown profile family \"" +
                                         obj.at("family").get<std::string>() + "\"");
        return truncate_geometric(require_number(obj, "c", "profile"),
                                  require_number(obj, "q", "profile"),
                                  require_number(obj, "eps", "profile"));
    }
    reject_unknown_keys(obj, {"probs", "tail_bound"}, "profile");
    std::optional<double> tail;
    if (obj.contains("tail_bound")) tail = require_number(obj, "tail_bound", "profile");
    return make_profile(require_number_array(obj, "probs", "profile"), tail);
}

Objective parse_objective(const json& obj) {
    if (!obj.is_object()) raise(errc::parse_error, "\"objective\" must be an object");
    if (!obj.contains("kind")) raise(errc::parse_error, "objective needs a \"kind\"");
    const std::string kind = obj.at("kind").get<std::string>();

    Objective objective;
    if (kind == "mth_last") {
        reject_unknown_keys(obj, {"kind", "m"}, "objective");
        objective.kind = Objective::Kind::mth_last;
        objective.m = require_int(obj, "m", "objective");
    } else if (kind == "l_to_m") {
        reject_unknown_keys(obj, {"kind", "l", "m"}, "objective");
        objective.kind = Objective::Kind::l_to_m;
        objective.ell = require_int(obj, "l", "objective");
        objective.m = require_int(obj, "m", "objective");
    } else if (kind == "custom_f") {
        reject_unknown_keys(obj, {"kind", "f", "f_inf"}, "objective");
        objective.kind = Objective::Kind::custom_f;
        objective.f = require_number_array(obj, "f", "objective");
        objective.f_inf = require_number(obj, "f_inf", "objective");
    } else {
        raise(errc::parse_error, "unknown objective kind \"" + kind + "\"");
    }
    return objective;
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, e.what());
    }
    if (!root.is_object()) raise(errc::parse_error, "problem file must be a JSON object");

    try {
        reject_unknown_keys(root, {"profile", "objective", "seed", "replicates"}, "problem file");
        if (!root.contains("profile")) raise(errc::parse_error, "missing \"profile\"");
        if (!root.contains("objective")) raise(errc::parse_error, "missing \"objective\"");

        ProblemSpec spec;
        spec.profile = parse_profile(root.at("profile"));
        spec.objective = parse_objective(root.at("objective"));
        if (root.contains("seed")) {
            const auto& v = root.at("seed");
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                raise(errc::parse_error, "\"seed\" must be a nonnegative integer");
            spec.seed = v.get<std::uint64_t>();
        }
        if (root.contains("replicates")) {
            const auto& v = root.at("replicates");
            if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
                raise(errc::parse_error, "\"replicates\" must be a positive integer");
            spec.replicates = v.get<std::uint64_t>();
        }
        return spec;
    } catch (const json::exception& e) {
        raise(errc::parse_error, e.what());
    }
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

std::string emit_canonical(const ProblemSpec& spec) {
    json root;
    root["profile"]["probs"] = spec.profile.probs;
    if (spec.profile.tail_bound) root["profile"]["tail_bound"] = *spec.profile.tail_bound;

    json& obj = root["objective"];
    switch (spec.objective.kind) {
        case Objective::Kind::mth_last:
            obj["kind"] = "mth_last";
            obj["m"] = spec.objective.m;
            break;
        case Objective::Kind::l_to_m:
            obj["kind"] = "l_to_m";
            obj["l"] = spec.objective.ell;
            obj["m"] = spec.objective.m;
            break;
        case Objective::Kind::custom_f:
            obj["kind"] = "custom_f";
            obj["f"] = spec.objective.f;
            obj["f_inf"] = spec.objective.f_inf;
            break;
    }
    if (spec.seed) root["seed"] = *spec.seed;
    if (spec.replicates) root["replicates"] = *spec.replicates;
    return root.dump(2) + "\n";
}

StoppingProblem build_problem(const ProblemSpec& spec) {
    switch (spec.objective.kind) {
        case Objective::Kind::mth_last:
            return make_problem(spec.profile, mth_last_payoff(spec.profile, spec.objective.m));
        case Objective::Kind::l_to_m:
            return make_problem(spec.profile,
                                l_to_m_payoff(spec.profile, spec.objective.ell, spec.objective.m));
        case Objective::Kind::custom_f:
            return make_problem(spec.profile,
                                ExtendedSequence(spec.objective.f, spec.objective.f_inf));
    }
    raise(errc::parse_error, "unreachable objective kind");
}

std::string write_matrix_text(const Matrix& m) {
    std::string out = "N=" + std::to_string(m.rows()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += '\t';
            out += num12(m(i, j));
        }
        out += '\n';
    }
    return out;
}

Matrix read_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("N=", 0) != 0)
        raise(errc::parse_error, "matrix file must start with \"N=<dim>\"");
    std::size_t dim = 0;
    try {
        dim = std::stoul(header.substr(2));
    } catch (const std::exception&) {
        raise(errc::parse_error, "bad dimension in matrix header \"" + header + "\"");
    }
    if (dim == 0) raise(errc::parse_error, "matrix dimension must be positive");

    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::string line;
        if (!std::getline(in, line))
            raise(errc::parse_error, "matrix row " + std::to_string(i + 1) + " missing");
        std::istringstream row(line);
        for (std::size_t j = 0; j < dim; ++j) {
            double v = 0.0;
            if (!(row >> v))
                raise(errc::parse_error, "matrix row " + std::to_string(i + 1) +
                                             " needs " + std::to_string(dim) + " entries");
            m(i, j) = v;
        }
        double extra = 0.0;
        if (row >> extra)
            raise(errc::parse_error,
                  "matrix row " + std::to_string(i + 1) + " has more than " +
                      std::to_string(dim) + " entries");
    }
    return m;
}

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace bstop
