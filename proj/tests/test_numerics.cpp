#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "bellforge/geometry.hpp"
#include "bellforge/linalg.hpp"
#include "bellforge/lp.hpp"
#include "bellforge/rational.hpp"

using namespace bellforge;

TEST_CASE("rational parsing and formatting") {
    CHECK(Rat::parse("1/4") == Rat(1, 4));
    CHECK(Rat::parse("-3/6") == Rat(-1, 2));
    CHECK(Rat::parse("0.25") == Rat(1, 4));
    CHECK(Rat::parse("-1.5e-3") == Rat(-3, 2000));
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(!Rat::try_parse("1/0").has_value());
    CHECK(!Rat::try_parse("abc").has_value());
    CHECK(Rat(3, 12).str() == "1/4");
    CHECK(Rat(8, 4).str() == "2");
}

TEST_CASE("rational arithmetic is canonical") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK_THROWS_AS(a / Rat(0), std::domain_error);
    CHECK(abs(Rat(-5, 7)) == Rat(5, 7));
}

TEST_CASE("det_exact: identity and singular cases") {
    DenseMatrix<Rat> id(12, 12);
    for (int i = 0; i < 12; ++i) id.at(i, i) = Rat(1);
    CHECK(det_exact(id) == Rat(1));

    DenseMatrix<Rat> rep(3, 3);
    for (int j = 0; j < 3; ++j) {
        rep.at(0, j) = Rat(j + 1);
        rep.at(1, j) = Rat(j + 1);  // repeated row
        rep.at(2, j) = Rat(j + 7, 2);
    }
    CHECK(det_exact(rep) == Rat(0));

    DenseMatrix<Rat> bad(2, 3);
    CHECK_THROWS_AS(det_exact(bad), std::invalid_argument);
}

TEST_CASE("det_exact: closed form of the facet witness matrix") {
    const Rat eps(1, 4);
    CHECK(det_exact(facet_witness_matrix(eps)) == Rat(5103, 4194304));
    for (const Rat e : {Rat(1, 5), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4)}) {
        const Rat g = Rat(1) - e;
        const Rat expect =
            Rat(4) * (Rat(2) - e) * g * g * g * g * g * g * e * e * e * e * e;
        CHECK(det_exact(facet_witness_matrix(e)) == expect);
    }
}

TEST_CASE("det_exact: block-triangular determinant is the product of blocks") {
    std::mt19937 rng(7);
    auto rnd = [&] { return Rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 7); };
    for (int trial = 0; trial < 5; ++trial) {
        DenseMatrix<Rat> a(3, 3), b(2, 2), m(5, 5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = a.at(i, j) = rnd();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.at(3 + i, 3 + j) = b.at(i, j) = rnd();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) m.at(i, 3 + j) = rnd();  // upper block
        CHECK(det_exact(m) == det_exact(a) * det_exact(b));
    }
}

TEST_CASE("affine_rank basics") {
    CHECK(affine_rank<Rat>({{Rat(1), Rat(2)}}) == 0);
    CHECK(affine_rank<Rat>({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}) == 1);
    CHECK_THROWS_AS(affine_rank<Rat>({}), std::invalid_argument);
}

TEST_CASE("affine_rank: the 12 witness vertices at eps=1/3 are affinely independent") {
    const auto pts = facet_witness_vertices<Rat>(Rat(1, 3));
    CHECK(pts.size() == 12);
    CHECK(affine_rank(pts) == 11);
}

TEST_CASE("affine_rank is invariant under permutation and translation") {
    std::vector<std::vector<Rat>> pts = {{Rat(0), Rat(0), Rat(1)},
                                         {Rat(1), Rat(0), Rat(0)},
                                         {Rat(0), Rat(1), Rat(0)},
                                         {Rat(1, 2), Rat(1, 4), Rat(1, 4)}};
    const int r = affine_rank(pts);
    std::reverse(pts.begin(), pts.end());
    CHECK(affine_rank(pts) == r);
    for (auto& p : pts)
        for (int d = 0; d < 3; ++d) p[d] += Rat(5, 3);
    CHECK(affine_rank(pts) == r);
}

TEST_CASE("lp_solve: point on a segment") {
    // w >= 0, sum w = 1, w . [0,1] = 1/2  ->  w = (1/2, 1/2)
    LPProblem<Rat> p;
    p.A = {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    p.b = {Rat(1), Rat(1, 2)};
    const auto res = lp_solve(p);
    REQUIRE(res.status == LPStatus::Feasible);
    CHECK(res.solution[0] == Rat(1, 2));
    CHECK(res.solution[1] == Rat(1, 2));
}

TEST_CASE("lp_solve: infeasible target yields a Farkas certificate") {
    LPProblem<Rat> p;
    p.A = {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    p.b = {Rat(1), Rat(2)};  // w.[0,1] = 2 is outside the segment
    const auto res = lp_solve(p);
    REQUIRE(res.status == LPStatus::Infeasible);
    const auto& y = res.dual_certificate;
    REQUIRE(y.size() == 2);
    // y^T A <= 0 componentwise, y^T b > 0.
    for (int j = 0; j < 2; ++j)
        CHECK(y[0] * p.A[0][j] + y[1] * p.A[1][j] <= Rat(0));
    CHECK(y[0] * p.b[0] + y[1] * p.b[1] > Rat(0));
}

TEST_CASE("lp_solve: optimization and unboundedness") {
    LPProblem<Rat> p;
    p.A = {{Rat(1), Rat(1), Rat(1)}};
    p.b = {Rat(1)};
    p.c = {Rat(1), Rat(3), Rat(2)};
    p.sense = LPProblem<Rat>::Sense::Maximize;
    const auto res = lp_solve(p);
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.objective == Rat(3));
    CHECK(res.solution[1] == Rat(1));

    LPProblem<Rat> u;
    u.A = {{Rat(1), Rat(-1)}};
    u.b = {Rat(0)};
    u.c = {Rat(1), Rat(0)};
    u.sense = LPProblem<Rat>::Sense::Maximize;
    CHECK(lp_solve(u).status == LPStatus::Unbounded);
}

TEST_CASE("lp_solve: feasible solutions satisfy the constraints by re-substitution") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        LPProblem<Rat> p;
        const int n = 4;
        p.A.assign(2, std::vector<Rat>(n));
        for (auto& row : p.A)
            for (auto& x : row) x = Rat(static_cast<long>(rng() % 9), 1 + rng() % 4);
        // b in the column cone, so the problem is feasible by construction.
        std::vector<Rat> w(n);
        for (auto& x : w) x = Rat(static_cast<long>(rng() % 5), 1 + rng() % 3);
        p.b.assign(2, Rat(0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < n; ++j) p.b[i] += p.A[i][j] * w[j];
        const auto res = lp_solve(p);
        REQUIRE(res.status == LPStatus::Feasible);
        for (int i = 0; i < 2; ++i) {
            Rat lhs(0);
            for (int j = 0; j < n; ++j) lhs += p.A[i][j] * res.solution[j];
            CHECK(lhs == p.b[i]);
        }
        for (const Rat& x : res.solution) CHECK(x >= Rat(0));
    }
}

TEST_CASE("lp_solve rejects inconsistent shapes") {
    LPProblem<Rat> p;
    p.A = {{Rat(1)}, {Rat(1), Rat(2)}};
    p.b = {Rat(1), Rat(1)};
    CHECK_THROWS_AS(lp_solve(p), std::invalid_argument);
}
