#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bellforge/vertices.hpp"

using namespace bellforge;

namespace {

BellScenario sc2222() { return BellScenario{}; }

/// Brute-force vertex enumeration of {p in [0,1]^3 : |p_i - p_j| <= eps} from
/// its H-representation: intersect every triple of facet planes, keep the
/// feasible intersection points, dedup. Independent of the library's
/// grid-and-LP path.
std::vector<std::vector<Rat>> brute_force_3d_vertices(const Rat& eps) {
    // Each constraint as (a, b): a . p <= b.
    std::vector<std::pair<std::array<Rat, 3>, Rat>> cons;
    for (int i = 0; i < 3; ++i) {
        std::array<Rat, 3> lo{}, hi{};
        lo[i] = Rat(-1);
        hi[i] = Rat(1);
        cons.push_back({lo, Rat(0)});
        cons.push_back({hi, Rat(1)});
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int s : {+1, -1}) {
                std::array<Rat, 3> a{};
                a[i] = Rat(s);
                a[j] = Rat(-s);
                cons.push_back({a, eps});
            }

    auto solve3 = [](const std::array<std::array<Rat, 3>, 3>& A,
                     const std::array<Rat, 3>& b,
                     std::array<Rat, 3>& x) -> bool {
        // Cramer's rule.
        auto det3 = [](const std::array<std::array<Rat, 3>, 3>& m) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        const Rat d = det3(A);
        if (d == Rat(0)) return false;
        for (int c = 0; c < 3; ++c) {
            auto Ac = A;
            for (int r = 0; r < 3; ++r) Ac[r][c] = b[r];
            x[c] = det3(Ac) / d;
        }
        return true;
    };

    std::vector<std::vector<Rat>> out;
    const int n = static_cast<int>(cons.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                std::array<std::array<Rat, 3>, 3> A = {cons[i].first, cons[j].first,
                                                       cons[k].first};
                std::array<Rat, 3> b = {cons[i].second, cons[j].second, cons[k].second};
                std::array<Rat, 3> x;
                if (!solve3(A, b, x)) continue;
                bool feasible = true;
                for (const auto& [a, rhs] : cons) {
                    Rat lhs = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
                    if (lhs > rhs) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                std::vector<Rat> v(x.begin(), x.end());
                bool dup = false;
                for (const auto& w : out)
                    if (w == v) dup = true;
                if (!dup) out.push_back(std::move(v));
            }
    return out;
}

}  // namespace

TEST_CASE("input vertices: uniform box") {
    RelaxationParams<Rat> p;
    p.l = p.h = Rat(1, 4);
    const auto V = input_vertices(p, sc2222());
    REQUIRE(V.vertices.size() == 1);
    CHECK(V.vertices[0] == std::vector<Rat>(4, Rat(1, 4)));
}

TEST_CASE("input vertices: l=1/8, h=1/2 gives 12 permutations") {
    RelaxationParams<Rat> p;
    p.l = Rat(1, 8);
    p.h = Rat(1, 2);
    const auto V = input_vertices(p, sc2222());
    CHECK(V.vertices.size() == 12);
    for (const auto& v : V.vertices) {
        Rat sum(0);
        std::multiset<std::string> entries;
        for (const Rat& x : v) {
            sum += x;
            entries.insert(x.str());
        }
        CHECK(sum == Rat(1));
        CHECK(entries == std::multiset<std::string>{"1/2", "1/8", "1/8", "1/4"});
    }
}

TEST_CASE("input vertices: l=1/4, h=1/2 collapses to the uniform point") {
    RelaxationParams<Rat> p;
    p.l = Rat(1, 4);
    p.h = Rat(1, 2);
    const auto V = input_vertices(p, sc2222());
    REQUIRE(V.vertices.size() == 1);
    CHECK(V.vertices[0] == std::vector<Rat>(4, Rat(1, 4)));
}

TEST_CASE("input vertices: infeasible box rejected") {
    RelaxationParams<Rat> p;
    p.l = Rat(1, 2);
    p.h = Rat(1, 2);
    CHECK_THROWS_AS(input_vertices(p, sc2222()), std::invalid_argument);
}

TEST_CASE("marginal vertex pairs") {
    const auto p14 = marginal_vertex_pairs(Rat(1, 4));
    CHECK(p14.size() == 6);
    const auto p0 = marginal_vertex_pairs(Rat(0));
    CHECK(p0.size() == 2);
    const auto p12 = marginal_vertex_pairs(Rat(1, 2));
    CHECK(p12.size() == 6);
    bool has_0_half = false, has_half_0 = false;
    for (const auto& [a, b] : p12) {
        if (a == Rat(0) && b == Rat(1, 2)) has_0_half = true;
        if (a == Rat(1, 2) && b == Rat(0)) has_half_0 = true;
    }
    CHECK(has_0_half);
    CHECK(has_half_0);
    CHECK_THROWS_AS(marginal_vertex_pairs(Rat(3, 2)), std::invalid_argument);
}

TEST_CASE("marginal vertices with two conditioning inputs match the pair list") {
    const auto tables = marginal_vertices(Rat(1, 4), 2);
    CHECK(tables.size() == 6);
    const auto pairs = marginal_vertex_pairs(Rat(1, 4));
    for (const auto& [a, b] : pairs) {
        bool found = false;
        for (const auto& t : tables)
            if (t[0] == a && t[1] == b) found = true;
        CHECK(found);
    }
    CHECK(marginal_vertices(Rat(0), 2).size() == 2);
}

TEST_CASE("marginal vertices: no forbidden constant tables") {
    const Rat eps(1, 4);
    for (int n : {2, 3}) {
        for (const auto& t : marginal_vertices(eps, n)) {
            bool all_eps = true, all_1me = true;
            for (const Rat& x : t) {
                all_eps = all_eps && x == eps;
                all_1me = all_1me && x == Rat(1) - eps;
            }
            CHECK(!all_eps);
            CHECK(!all_1me);
        }
    }
}

TEST_CASE("marginal vertices for three inputs match the H-representation oracle") {
    const Rat eps(1, 4);
    const auto ours = marginal_vertices(eps, 3);
    const auto oracle = brute_force_3d_vertices(eps);
    CHECK(ours.size() == oracle.size());
    // Set equality, not just count.
    for (const auto& v : oracle) {
        bool found = false;
        for (const auto& w : ours)
            if (v == w) found = true;
        CHECK(found);
    }
}

TEST_CASE("conditional vertex counts") {
    const auto sc = sc2222();
    CHECK(pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc).vertices.size() == 1296);
    CHECK(pd_conditional_vertices(Rat(0), Rat(0), sc).vertices.size() == 16);
    CHECK(pd_conditional_vertices(Rat(0), Rat(1, 2), sc).vertices.size() == 144);
}

TEST_CASE("conditional vertices at eps=0 are exactly the deterministic behaviors") {
    const auto sc = sc2222();
    const auto V = pd_conditional_vertices(Rat(0), Rat(0), sc);
    std::set<std::vector<std::string>> got;
    for (const auto& v : V.vertices) {
        std::vector<std::string> s;
        for (const Rat& x : v) s.push_back(x.str());
        got.insert(s);
    }
    std::set<std::vector<std::string>> expect;
    for (int fa = 0; fa < 4; ++fa)  // Alice outcome per x, Bob outcome per y
        for (int fb = 0; fb < 4; ++fb) {
            std::vector<Rat> v(sc.table_size(), Rat(0));
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    const int a = (fa >> x) & 1, b = (fb >> y) & 1;
                    v[sc.index(a, b, x, y)] = Rat(1);
                }
            std::vector<std::string> s;
            for (const Rat& x : v) s.push_back(x.str());
            expect.insert(s);
        }
    CHECK(got == expect);
}

TEST_CASE("conditional vertices respect the signaling bounds exactly") {
    const auto sc = sc2222();
    const Rat epsA(1, 4), epsB(1, 2);
    const auto V = pd_conditional_vertices(epsA, epsB, sc);
    for (std::size_t i = 0; i < V.vertices.size(); i += 97) {
        ConditionalBehavior<Rat> cond(sc, V.vertices[i]);
        auto [dA, dB] = signaling_deficit(cond);
        CHECK(dA <= epsA);
        CHECK(dB <= epsB);
    }
}

TEST_CASE("joint vertex counts") {
    const auto sc = sc2222();
    RelaxationParams<Rat> p;
    p.l = p.h = Rat(1, 4);
    p.epsA = p.epsB = Rat(1, 4);
    CHECK(mdpdl_vertices(p, sc).vertices.size() == 1296);
    p.epsA = p.epsB = Rat(0);
    CHECK(mdpdl_vertices(p, sc).vertices.size() == 16);
    p.l = Rat(1, 8);
    p.h = Rat(1, 2);
    CHECK(mdpdl_vertices(p, sc).vertices.size() == 192);
}

TEST_CASE("extremality filter keeps every product point of the conditional set") {
    // A small sanity case: at eps=0 the 16 deterministic joints (uniform
    // inputs) are all extremal, so filtering changes nothing.
    const auto sc = sc2222();
    RelaxationParams<Rat> p;
    p.l = p.h = Rat(1, 4);
    p.epsA = p.epsB = Rat(0);
    CHECK(mdpdl_vertices(p, sc, true).vertices.size() == 16);
}

TEST_CASE("float policy enumeration agrees with the exact one") {
    const auto sc = sc2222();
    const auto Vr = pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc);
    const auto Vd = pd_conditional_vertices(0.25, 0.25, sc);
    REQUIRE(Vr.vertices.size() == Vd.vertices.size());
    for (std::size_t i = 0; i < Vr.vertices.size(); ++i)
        for (std::size_t d = 0; d < Vr.vertices[i].size(); ++d)
            CHECK(Vd.vertices[i][d] ==
                  doctest::Approx(Vr.vertices[i][d].to_double()).epsilon(1e-12));
}
