#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellforge/geometry.hpp"

using namespace bellforge;

namespace {

BellScenario sc2222() { return BellScenario{}; }

VertexSet<Rat> deterministic_vertices() {
    return pd_conditional_vertices(Rat(0), Rat(0), sc2222());
}

}  // namespace

TEST_CASE("every vertex is a member of its own polytope") {
    const auto V = deterministic_vertices();
    for (std::size_t i = 0; i < V.vertices.size(); i += 5) {
        const auto res = membership(V.vertices[i], V);
        REQUIRE(res.status == MembershipStatus::Inside);
        Rat w(0);
        for (const Rat& x : res.weights) w += x;
        CHECK(w == Rat(1));
    }
}

TEST_CASE("a point outside gets a verified separating functional") {
    const auto sc = sc2222();
    const auto V = deterministic_vertices();
    // A PR-box-like table is outside the local polytope.
    std::vector<Rat> pr(sc.table_size(), Rat(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) pr[sc.index(a, b, x, y)] = Rat(1, 2);
    const auto res = membership(pr, V);
    REQUIRE(res.status == MembershipStatus::Outside);
    // The functional is already re-verified inside membership(); check the
    // reported value on the query once more here.
    Rat val = res.separating_offset;
    for (int i = 0; i < sc.table_size(); ++i) val += res.separating_coeffs[i] * pr[i];
    CHECK(val == res.separating_value);
    CHECK(val > Rat(0));
}

TEST_CASE("CHSH over deterministic vertices: max 2 with 8 maximizers") {
    const auto sc = sc2222();
    const auto V = deterministic_vertices();
    RelaxationParams<Rat> params;
    const auto f = build_inequality<Rat>("chsh", params, sc);
    const auto mx = max_over_vertices(f, V, 2);
    CHECK(mx.value == Rat(2));
    CHECK(mx.argmax.size() == 8);
    CHECK(saturating_vertices(f, V).vertices.size() == 8);
}

TEST_CASE("polytope dimensions") {
    const auto sc = sc2222();
    CHECK(polytope_dim(pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc)) == 12);
    CHECK(polytope_dim(deterministic_vertices()) == 8);
    VertexSet<Rat> single{sc, VertexKind::Conditional, {}, {deterministic_vertices().vertices[0]}};
    CHECK(polytope_dim(single) == 0);
}

TEST_CASE("pd_facet is a facet at eps = 1/3") {
    const auto sc = sc2222();
    const Rat eps(1, 3);
    RelaxationParams<Rat> params;
    params.epsA = params.epsB = eps;
    const auto f = build_inequality<Rat>("pd_facet", params, sc);
    const auto V = pd_conditional_vertices(eps, eps, sc);
    const auto res = is_facet(f, V);
    CHECK(res.facet);
    CHECK(res.polytope_dimension == 12);
    CHECK(res.saturating_dim == 11);
    CHECK(res.witness.size() == 12);
    CHECK(affine_rank(res.witness) == 11);
}

TEST_CASE("the trivial normalization functional is valid but not a facet") {
    const auto sc = sc2222();
    const auto V = deterministic_vertices();
    LinearFunctional<Rat> f;
    f.name = "trivial";
    f.scenario = sc;
    f.coeffs.assign(sc.table_size(), Rat(1));
    f.bound = Rat(4);  // every conditional table sums to 4
    const auto res = is_facet(f, V);
    CHECK(!res.facet);
    CHECK(res.saturating_dim == polytope_dim(V));  // everything saturates
}

TEST_CASE("is_facet rejects a violated functional") {
    const auto sc = sc2222();
    const auto V = deterministic_vertices();
    LinearFunctional<Rat> f;
    f.scenario = sc;
    f.coeffs.assign(sc.table_size(), Rat(1));
    f.bound = Rat(3);
    CHECK_THROWS_AS(is_facet(f, V), std::invalid_argument);
}

TEST_CASE("build_inequality coefficient spot checks") {
    const auto sc = sc2222();

    RelaxationParams<Rat> params;
    params.l = Rat(1, 8);
    params.h = Rat(1, 2);
    params.epsA = params.epsB = Rat(1, 4);
    const auto f = build_inequality<Rat>("mdpdl", params, sc);
    const Rat g = Rat(3, 4);  // 1 - eps
    CHECK(f.coeffs[sc.index(0, 0, 0, 0)] == params.l * g * g);
    CHECK(f.coeffs[sc.index(1, 1, 0, 0)] == Rat(0));
    CHECK(f.coeffs[sc.index(0, 1, 0, 0)] == -params.l * g * Rat(1, 4));
    CHECK(f.coeffs[sc.index(1, 0, 0, 0)] == -params.l * g * Rat(1, 4));
    CHECK(f.coeffs[sc.index(0, 1, 0, 1)] == -params.h);
    CHECK(f.bound == Rat(0));

    // At eps = 0, pd_facet reduces to the Hardy-type expression with bound 0.
    RelaxationParams<Rat> p0;
    p0.epsA = p0.epsB = Rat(0);
    const auto h0 = build_inequality<Rat>("pd_facet", p0, sc);
    CHECK(h0.coeffs[sc.index(0, 0, 0, 0)] == Rat(1));
    CHECK(h0.coeffs[sc.index(1, 1, 0, 0)] == Rat(0));
    CHECK(h0.coeffs[sc.index(0, 1, 0, 1)] == Rat(-1));
    CHECK(h0.coeffs[sc.index(1, 0, 1, 0)] == Rat(-1));
    CHECK(h0.coeffs[sc.index(0, 0, 1, 1)] == Rat(-1));
    CHECK(h0.bound == Rat(0));

    RelaxationParams<Rat> pk;
    pk.kappa = Rat(1, 4);
    const auto leak = build_inequality<Rat>("chsh_leak", pk, sc);
    CHECK(leak.bound == Rat(5, 2));
    const auto chsh = build_inequality<Rat>("chsh", pk, sc);
    CHECK(chsh.coeffs == leak.coeffs);
    CHECK(chsh.bound == Rat(2));
    CHECK(chsh.coeffs[sc.index(0, 0, 1, 1)] == Rat(-1));
    CHECK(chsh.coeffs[sc.index(0, 1, 1, 1)] == Rat(1));
    CHECK(chsh.coeffs[sc.index(0, 1, 0, 1)] == Rat(-1));
}

TEST_CASE("mdl margin on the deterministic joint polytope is zero") {
    const auto sc = sc2222();
    RelaxationParams<Rat> params;
    params.l = params.h = Rat(1, 4);
    params.epsA = params.epsB = Rat(0);
    const auto f = build_inequality<Rat>("mdl", params, sc);
    const auto V = mdpdl_vertices(params, sc);
    const auto mx = max_over_vertices(f, V);
    CHECK(mx.value == Rat(0));
}

TEST_CASE("build_inequality rejects unknown names and wrong scenarios") {
    RelaxationParams<Rat> params;
    CHECK_THROWS_AS(build_inequality<Rat>("nonsense", params, sc2222()),
                    std::invalid_argument);
    BellScenario big;
    big.nX = 3;
    CHECK_THROWS_AS(build_inequality<Rat>("chsh", params, big), std::invalid_argument);
}

TEST_CASE("saturating_class recognizes all five shapes among the witnesses") {
    const Rat eps(1, 4);
    const auto vs = facet_witness_vertices<Rat>(eps);
    bool seen[6] = {};
    for (const auto& v : vs) {
        const int c = saturating_class(v, eps);
        REQUIRE(c >= 0);
        REQUIRE(c <= 5);
        seen[c] = true;
    }
    for (int c = 1; c <= 5; ++c) CHECK(seen[c]);
}
