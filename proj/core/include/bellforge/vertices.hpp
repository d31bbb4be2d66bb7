#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/lp.hpp"
#include "bellforge/scenario.hpp"

namespace bellforge {

enum class VertexKind { Input, Conditional, Joint };

/// Extremal behaviors of one of the relaxed polytopes, deduplicated and in
/// canonical (lexicographic) order.
template <class T>
struct VertexSet {
    BellScenario scenario;
    VertexKind kind = VertexKind::Conditional;
    RelaxationParams<T> params;
    std::vector<std::vector<T>> vertices;
    std::string ordering = "lex";
};

namespace detail {

template <class T>
bool lex_less(const std::vector<T>& a, const std::vector<T>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <class T>
bool tables_equal(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (scalar_policy<T>::exact) {
            if (a[i] != b[i]) return false;
        } else {
            if (std::abs(a[i] - b[i]) > 1e-12) return false;  // float dedup tolerance
        }
    }
    return true;
}

template <class T>
void sort_dedup(std::vector<std::vector<T>>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less<T>);
    vs.erase(std::unique(vs.begin(), vs.end(), tables_equal<T>), vs.end());
}

template <class T>
long floor_to_long(const T& x) {
    if constexpr (scalar_policy<T>::exact) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num().get_mpz_t(),
                   x.raw().get_den().get_mpz_t());
        return q.get_si();
    } else {
        return static_cast<long>(std::floor(x + scalar_policy<T>::tolerance()));
    }
}

/// Removes every point expressible as a convex combination of the others.
/// Correct by the definition of extremality; cost is one LP per candidate.
template <class T>
std::vector<std::vector<T>> filter_extreme(const std::vector<std::vector<T>>& pts) {
    std::vector<std::vector<T>> keep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t dim = pts[i].size();
        LPProblem<T> lp;
        lp.A.assign(dim + 1, {});
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            for (std::size_t d = 0; d < dim; ++d) lp.A[d].push_back(pts[j][d]);
            lp.A[dim].push_back(scalar_policy<T>::from_int(1));
        }
        lp.b.assign(pts[i].begin(), pts[i].end());
        lp.b.push_back(scalar_policy<T>::from_int(1));
        if (lp_solve(lp).status == LPStatus::Infeasible) keep.push_back(pts[i]);
    }
    return keep;
}

}  // namespace detail

/// Vertices of the (l,h) input box {p_XY : l <= p_XY(x,y) <= h, sum = 1}:
/// all distinct permutations of {h x n, l x (m-n-1), remainder}; the single
/// uniform point when l = h.
template <class T>
VertexSet<T> input_vertices(const RelaxationParams<T>& params, const BellScenario& sc) {
    sc.validate();
    params.validate_input_box(sc);
    const int m = sc.input_cells();
    VertexSet<T> out{sc, VertexKind::Input, params, {}};
    const T one = scalar_policy<T>::from_int(1);
    if (scalar_policy<T>::eq(params.l, params.h)) {
        out.vertices.push_back(
            std::vector<T>(m, one / scalar_policy<T>::from_int(m)));
        return out;
    }
    long n = detail::floor_to_long((one - scalar_policy<T>::from_int(m) * params.l) /
                                   (params.h - params.l));
    if (n < 0) n = 0;
    if (n > m - 1) n = m - 1;
    std::vector<T> cell;
    for (long i = 0; i < n; ++i) cell.push_back(params.h);
    for (long i = 0; i < m - n - 1; ++i) cell.push_back(params.l);
    T rem = one;
    for (const T& x : cell) rem -= x;
    cell.push_back(rem);
    std::sort(cell.begin(), cell.end());
    do {
        out.vertices.push_back(cell);
    } while (std::next_permutation(cell.begin(), cell.end()));
    detail::sort_dedup(out.vertices);
    return out;
}

/// The six extremal (p(0|first), p(0|second)) pairs of a single-party marginal
/// with two conditioning inputs; collapses to the two deterministic pairs at
/// eps = 0. The constant pairs (eps,eps) and (1-eps,1-eps) are not extremal.
template <class T>
std::vector<std::pair<T, T>> marginal_vertex_pairs(const T& eps) {
    const T zero = scalar_policy<T>::from_int(0);
    const T one = scalar_policy<T>::from_int(1);
    if (eps < zero || !(eps < one))
        throw std::invalid_argument("marginal_vertex_pairs: eps out of [0,1)");
    std::vector<std::pair<T, T>> pairs = {{zero, zero},      {one, one},
                                          {zero, eps},       {one, one - eps},
                                          {eps, zero},       {one - eps, one}};
    std::vector<std::pair<T, T>> out;
    for (const auto& p : pairs) {
        bool dup = false;
        for (const auto& q : out)
            if (scalar_policy<T>::eq(p.first, q.first) &&
                scalar_policy<T>::eq(p.second, q.second))
                dup = true;
        if (!dup) out.push_back(p);
    }
    return out;
}

/// Vertices of one party's marginal polytope over n conditioning inputs:
/// tables p(0|i) with entries in {0, eps, 1-eps, 1}, pairwise shift <= eps,
/// LP-filtered down to the extreme points.
template <class T>
std::vector<std::vector<T>> marginal_vertices(const T& eps, int n_conditioning) {
    const T zero = scalar_policy<T>::from_int(0);
    const T one = scalar_policy<T>::from_int(1);
    if (eps < zero || !(eps < one))
        throw std::invalid_argument("marginal_vertices: eps out of [0,1)");
    if (n_conditioning < 2)
        throw std::invalid_argument("marginal_vertices: need >= 2 conditioning inputs");

    std::vector<T> levels = {zero, eps, one - eps, one};
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](const T& a, const T& b) { return scalar_policy<T>::eq(a, b); }),
                 levels.end());

    std::vector<std::vector<T>> grid;
    std::vector<std::size_t> idx(n_conditioning, 0);
    while (true) {
        std::vector<T> table;
        for (int i = 0; i < n_conditioning; ++i) table.push_back(levels[idx[i]]);
        bool ok = true;
        for (int i = 0; ok && i < n_conditioning; ++i)
            for (int j = i + 1; ok && j < n_conditioning; ++j)
                if (scalar_abs(table[i] - table[j]) > eps + scalar_policy<T>::tolerance())
                    ok = false;
        if (ok) grid.push_back(std::move(table));
        int pos = n_conditioning - 1;
        while (pos >= 0 && ++idx[pos] == levels.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    auto out = detail::filter_extreme(grid);
    detail::sort_dedup(out);
    return out;
}

/// Vertices of the (epsA, epsB) parameter-dependent conditional polytope:
/// all products of one Alice marginal vertex per x and one Bob marginal
/// vertex per y.
template <class T>
VertexSet<T> pd_conditional_vertices(const T& epsA, const T& epsB,
                                     const BellScenario& sc) {
    sc.validate();
    const T one = scalar_policy<T>::from_int(1);

    const auto alice_per_x = marginal_vertices(epsA, sc.nY);
    const auto bob_per_y = marginal_vertices(epsB, sc.nX);

    // Alice tables: pick one per-x vertex for every x (Cartesian product).
    std::vector<std::vector<T>> alice_tables;  // value at input_index(x,y)
    {
        std::vector<std::size_t> pick(sc.nX, 0);
        while (true) {
            std::vector<T> tbl(sc.input_cells());
            for (int x = 0; x < sc.nX; ++x)
                for (int y = 0; y < sc.nY; ++y)
                    tbl[sc.input_index(x, y)] = alice_per_x[pick[x]][y];
            alice_tables.push_back(std::move(tbl));
            int pos = sc.nX - 1;
            while (pos >= 0 && ++pick[pos] == alice_per_x.size()) pick[pos--] = 0;
            if (pos < 0) break;
        }
    }
    std::vector<std::vector<T>> bob_tables;
    {
        std::vector<std::size_t> pick(sc.nY, 0);
        while (true) {
            std::vector<T> tbl(sc.input_cells());
            for (int y = 0; y < sc.nY; ++y)
                for (int x = 0; x < sc.nX; ++x)
                    tbl[sc.input_index(x, y)] = bob_per_y[pick[y]][x];
            bob_tables.push_back(std::move(tbl));
            int pos = sc.nY - 1;
            while (pos >= 0 && ++pick[pos] == bob_per_y.size()) pick[pos--] = 0;
            if (pos < 0) break;
        }
    }

    RelaxationParams<T> params;
    params.epsA = epsA;
    params.epsB = epsB;
    VertexSet<T> out{sc, VertexKind::Conditional, params, {}};
    out.vertices.reserve(alice_tables.size() * bob_tables.size());
    for (const auto& pa : alice_tables)
        for (const auto& pb : bob_tables) {
            std::vector<T> v(sc.table_size());
            for (int x = 0; x < sc.nX; ++x)
                for (int y = 0; y < sc.nY; ++y) {
                    const T& a0 = pa[sc.input_index(x, y)];
                    const T& b0 = pb[sc.input_index(x, y)];
                    v[sc.index(0, 0, x, y)] = a0 * b0;
                    v[sc.index(0, 1, x, y)] = a0 * (one - b0);
                    v[sc.index(1, 0, x, y)] = (one - a0) * b0;
                    v[sc.index(1, 1, x, y)] = (one - a0) * (one - b0);
                }
            out.vertices.push_back(std::move(v));
        }
    detail::sort_dedup(out.vertices);
    return out;
}

/// Generating points of the joint MDPDL polytope: the product of the input
/// vertices and the conditional vertices. The unfiltered set may contain
/// LP-redundant points but spans the same hull; pass filter_extremal to get
/// the exact vertex set.
template <class T>
VertexSet<T> mdpdl_vertices(const RelaxationParams<T>& params, const BellScenario& sc,
                            bool filter_extremal = false) {
    params.validate_input_box(sc);
    params.validate_eps();
    VertexSet<T> inputs = input_vertices(params, sc);
    VertexSet<T> cond = pd_conditional_vertices(params.epsA, params.epsB, sc);

    VertexSet<T> out{sc, VertexKind::Joint, params, {}};
    out.vertices.reserve(inputs.vertices.size() * cond.vertices.size());
    for (const auto& pin : inputs.vertices)
        for (const auto& pc : cond.vertices) {
            JointBehavior<T> j = joint_from_conditional(
                ConditionalBehavior<T>(sc, pc), InputDistribution<T>(sc, pin));
            out.vertices.push_back(j.values());
        }
    detail::sort_dedup(out.vertices);
    if (filter_extremal) {
        out.vertices = detail::filter_extreme(out.vertices);
        detail::sort_dedup(out.vertices);
    }
    return out;
}

}  // namespace bellforge
