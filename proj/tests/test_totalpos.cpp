#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bstop/chain.hpp"
#include "bstop/errors.hpp"
#include "bstop/totalpos.hpp"
#include "oracles.hpp"

using namespace bstop;
using bstop::testing::random_profile;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

// the counterexample matrix: TP2 but not TP3
const Matrix kA = from_rows({{10, 5, 0}, {8, 4, 3}, {4, 3, 8}});

std::int64_t choose(std::int64_t n, std::int64_t k) {
    std::int64_t c = 1;
    for (std::int64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

TEST_CASE("the counterexample matrix is TP2 but not TP3") {
    auto tp2 = is_tp(kA, 2);
    CHECK(tp2.tp);
    CHECK_FALSE(tp2.report.sampled);

    auto tp3 = is_tp(kA, 3);
    CHECK_FALSE(tp3.tp);
    // det A = -30, submatrix scale 10
    CHECK(tp3.report.min_value == doctest::Approx(-3.0).epsilon(1e-12));

    CHECK_THROWS_AS(is_tp(kA, 4), Error);
}

TEST_CASE("identity matrices are TP at every admissible order") {
    for (std::size_t dim : {2, 4, 6}) {
        auto id = Matrix::identity(dim);
        for (int r = 1; r <= static_cast<int>(dim); ++r) CHECK(is_tp(id, r).tp);
    }
}

TEST_CASE("sign signatures of small matrices") {
    auto lower = from_rows({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
    auto sig = sign_signature(lower, 2);
    REQUIRE(sig.sign_signature.size() == 2);
    CHECK(sig.sign_signature[0] == MinorSign::positive);
    CHECK(sig.sign_signature[1] == MinorSign::positive);

    auto neg_id = from_rows({{-1, 0}, {0, -1}});
    auto nsig = sign_signature(neg_id, 2);
    CHECK(nsig.sign_signature[0] == MinorSign::negative);
    CHECK(nsig.sign_signature[1] == MinorSign::positive);

    // order 3 of the counterexample holds a negative minor
    auto asig = sign_signature(kA, 3);
    CHECK(asig.sign_signature[2] == MinorSign::negative);
}

TEST_CASE("kernel representations shift the sequence down the diagonals") {
    auto m = kernel_representation(std::vector<double>{1, 1}, 3);
    const double expect[3][3] = {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == expect[i][j]);

    auto ones = kernel_representation(std::vector<double>{0, 1, 1, 1}, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(ones(i, j) == (i > j ? 1.0 : 0.0));
    CHECK(is_tp(ones, 4).tp);  // kernel of (0,1,1,...) is totally positive

    auto twice = kernel_representation(std::vector<double>{2}, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(twice(i, j) == (i == j ? 2.0 : 0.0));
}

TEST_CASE("minor counts follow the binomial formula") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    Matrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = val(rng);

    auto sig = sign_signature(m, 3);
    std::int64_t expected_total = 0;
    for (int k = 1; k <= 3; ++k) {
        const std::int64_t per_order = choose(6, k) * choose(6, k);
        CHECK(sig.per_order[k - 1].minors_checked == per_order);
        expected_total += per_order;
    }
    CHECK(sig.minors_checked == expected_total);
    CHECK_FALSE(sig.sampled);
}

TEST_CASE("embedded chains certify as TP4 by exhaustive enumeration") {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 50; ++rep) {
        auto profile = random_profile(rng, 8, 0.02, 0.98);
        auto res = is_tp(transition_matrix(profile).p, 4, 1e-10);
        CHECK(res.tp);
        CHECK_FALSE(res.report.sampled);
    }
}

TEST_CASE("TP is preserved under products of TP factors") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> diag(0.1, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t dim = 4 + rng() % 4;
        // diag * pattern * diag is TP; so is any product of such factors
        auto factor = [&] {
            Matrix m = decomposition_pattern(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                const double di = diag(rng);
                const double dj = diag(rng);
                for (std::size_t j = 0; j < dim; ++j) {
                    m(i, j) *= di;
                    m(j, i) *= dj;
                }
            }
            return m;
        };
        Matrix a = factor();
        Matrix b = factor();
        REQUIRE(is_tp(a, 4, 1e-10).tp);
        REQUIRE(is_tp(b, 4, 1e-10).tp);
        CHECK(is_tp(matmul(a, b), 4, 1e-10).tp);
    }
}

TEST_CASE("TP at order r implies TP at order r-1") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    int tp_seen = 0;
    for (int rep = 0; rep < 200; ++rep) {
        Matrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = val(rng);
        for (int r = 4; r >= 2; --r)
            if (is_tp(m, r).tp) {
                CHECK(is_tp(m, r - 1).tp);
                ++tp_seen;
            }
    }
    // chain matrices guarantee the implication fires on genuine TP inputs
    auto p = transition_matrix(make_profile({0.3, 0.6, 0.2}, 0.0)).p;
    for (int r = 4; r >= 2; --r) {
        REQUIRE(is_tp(p, r).tp);
        CHECK(is_tp(p, r - 1).tp);
    }
}

TEST_CASE("large orders fall back to deterministic sampling") {
    auto profile = make_profile(std::vector<double>(14, 0.4), 0.0);
    auto big = transition_matrix(profile).p;  // 16 x 16
    auto res = is_tp(big, 5, 1e-10);
    CHECK(res.tp);
    CHECK(res.report.sampled);
    CHECK(res.report.per_order[0].sampled == false);  // order 1: 256 minors
    CHECK(res.report.per_order[4].sampled == true);
    CHECK(res.report.per_order[4].minors_checked == kMinorSampleCap);

    auto res2 = is_tp(big, 5, 1e-10);
    CHECK(res2.report.min_value == res.report.min_value);  // same sample, same answer
}
