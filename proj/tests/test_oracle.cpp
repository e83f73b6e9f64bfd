#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bstop/errors.hpp"
#include "bstop/oracle.hpp"
#include "bstop/solver.hpp"
#include "oracles.hpp"

using namespace bstop;
using bstop::testing::brute_force_rule_value;
using bstop::testing::random_problem;

namespace {

StoppingProblem constant_last_success() {
    // p = 0.5 x 4, m = 1 payoffs f_k = s_0(k+1)
    return make_problem(make_profile(std::vector<double>(4, 0.5), 0.0),
                        ExtendedSequence({0.0, 0.125, 0.25, 0.5, 1.0}, 0.0));
}

}  // namespace

TEST_CASE("backward induction on the constant profile") {
    auto res = dp_solve(constant_last_success());
    CHECK(res.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(res.stop_set == std::vector<std::size_t>{3, 4});
    CHECK(res.continuation ==
          std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.0});

    auto flat = make_problem(make_profile({0.5, 0.5}, 0.0),
                             ExtendedSequence({0.0, 0.0, 0.0}, 0.25));
    CHECK(dp_solve(flat).value == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("the dp recursion is internally consistent") {
    std::mt19937_64 rng(163);
    for (int rep = 0; rep < 200; ++rep) {
        auto problem = random_problem(rng, 30);
        auto res = dp_solve(problem);
        const std::size_t n = problem.trials();
        CHECK(res.continuation[n] == problem.f.terminal);
        for (std::size_t k = 1; k <= n; ++k) {
            const double p = problem.profile.p(k);
            const double expect = p * std::max(problem.f.values[k], res.continuation[k]) +
                                  (1 - p) * res.continuation[k];
            CHECK(std::fabs(res.continuation[k - 1] - expect) < 1e-15);
        }
    }
}

TEST_CASE("dp dominates every stop-set rule on small horizons") {
    std::mt19937_64 rng(167);
    for (int rep = 0; rep < 20; ++rep) {
        auto problem = random_problem(rng, 6);
        auto res = dp_solve(problem);
        const std::size_t n = problem.trials();

        double best = -1.0;
        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            std::vector<std::size_t> rule;
            for (std::size_t k = 1; k <= n; ++k)
                if (mask & (1ULL << (k - 1))) rule.push_back(k);
            const double v = brute_force_rule_value(problem, rule);
            CHECK(res.value >= v - 1e-12);
            best = std::max(best, v);
        }
        CHECK(std::fabs(res.value - best) < 1e-12);  // the optimum is a stop-set rule
    }
}

TEST_CASE("threshold sweep of the constant-profile problem") {
    auto sweep = threshold_sweep(constant_last_success());
    REQUIRE(sweep.values.size() == 5);
    CHECK(sweep.values[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sweep.values[1] == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(sweep.values[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sweep.values[3] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sweep.values[4] == 0.0);  // never stop pays f_inf
    CHECK(sweep.best_thresholds == std::vector<std::size_t>{3, 4});
    CHECK(sweep.best_value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sweep values equal the brute-force value of each threshold rule") {
    std::mt19937_64 rng(173);
    for (int rep = 0; rep < 20; ++rep) {
        auto problem = random_problem(rng, 10);
        auto sweep = threshold_sweep(problem);
        const std::size_t n = problem.trials();
        for (std::size_t t = 1; t <= n + 1; ++t) {
            std::vector<std::size_t> rule;
            for (std::size_t k = t; k <= n; ++k) rule.push_back(k);
            CHECK(std::fabs(sweep.values[t - 1] - brute_force_rule_value(problem, rule)) < 1e-12);
        }
        CHECK(dp_solve(problem).value >= sweep.best_value - 1e-12);
    }
}

TEST_CASE("a frozen non-unimodal problem has a gapped optimal stop set") {
    auto problem = make_problem(
        make_profile({0.68, 0.78, 0.37, 0.66, 0.62, 0.6, 0.27}, 0.0),
        ExtendedSequence({0.0, 0.05, 0.77, 1.49, 0.5, 1.0, 0.63, 1.69}, 0.0));
    auto res = dp_solve(problem);
    CHECK(res.stop_set == std::vector<std::size_t>{3, 5, 6, 7});
    CHECK(res.value == doctest::Approx(1.076088488).epsilon(1e-12));

    // the gap at trial 4 is real: stopping there is strictly suboptimal
    CHECK(problem.f.values[4] < res.continuation[4] - 1e-6);
    CHECK_FALSE(is_unimodal(problem.f).unimodal);
}

TEST_CASE("simulation is exact on degenerate rules") {
    auto problem = constant_last_success();
    auto never = simulate(problem, std::vector<std::size_t>{}, 1000, 7);
    CHECK(never.mean == 0.0);
    CHECK(never.std_error == 0.0);

    auto certain = make_problem(make_profile({1.0}, 0.0), ExtendedSequence({0.0, 7.0}, 0.0));
    auto est = simulate(certain, std::vector<std::size_t>{1}, 1000, 7);
    CHECK(est.mean == 7.0);
    CHECK(est.std_error == 0.0);

    auto one = simulate(problem, std::vector<std::size_t>{3, 4}, 1, 7);
    CHECK(one.std_error == 0.0);
    CHECK(one.replicates == 1);

    CHECK_THROWS_AS(simulate(problem, std::vector<std::size_t>{1}, 0, 7), Error);
}

TEST_CASE("simulation reproduces bit-identically for a fixed seed") {
    auto problem = constant_last_success();
    auto a = simulate(problem, std::vector<std::size_t>{3, 4}, 50000, 42);
    auto b = simulate(problem, std::vector<std::size_t>{3, 4}, 50000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    auto c = simulate(problem, std::vector<std::size_t>{3, 4}, 50000, 43);
    CHECK(a.mean != c.mean);  // a different seed explores different paths
}

TEST_CASE("simulated means track the analytic value") {
    auto problem = constant_last_success();
    auto sol = myopic_stop_set(problem);
    auto est = simulate(problem, sol.stop_set, 200000, 12345);
    CHECK(std::fabs(est.mean - sol.value) < 4.5 * est.std_error + 1e-9);

    auto sweep = threshold_sweep(problem);
    CHECK(dp_solve(problem).value >= sweep.best_value - 1e-12);
    CHECK(sweep.best_value >= est.mean - 4.5 * est.std_error);
}

TEST_CASE("the counter generator is stateless and stable") {
    CHECK(counter_hash(1, 2, 3) == counter_hash(1, 2, 3));
    CHECK(counter_hash(1, 2, 3) != counter_hash(1, 3, 2));
    CHECK(counter_hash(1, 2, 3) != counter_hash(2, 2, 3));
    const double u = uniform01(counter_hash(9, 9, 9));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);

    // coarse uniformity: the mean of many draws sits near one half
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += uniform01(counter_hash(5, i, 1));
    CHECK(std::fabs(sum / n - 0.5) < 0.005);
}
