#pragma once

#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bellforge/linalg.hpp"
#include "bellforge/lp.hpp"
#include "bellforge/vertices.hpp"

namespace bellforge {

/// A Bell-type inequality coeffs . p <= bound over flat behavior tables.
/// Marginal terms (e.g. p_XY(00)) are always pre-expanded into joint
/// coefficients at build time, so evaluation is a plain dot product.
template <class T>
struct LinearFunctional {
    std::string name;
    BellScenario scenario;
    VertexKind kind = VertexKind::Conditional;
    std::vector<T> coeffs;
    T bound = scalar_policy<T>::from_int(0);
};

template <class T>
T evaluate(const LinearFunctional<T>& f, const std::vector<T>& table) {
    if (f.coeffs.size() != table.size())
        throw std::invalid_argument("evaluate: dimension mismatch");
    T v = scalar_policy<T>::from_int(0);
    for (std::size_t i = 0; i < table.size(); ++i) v += f.coeffs[i] * table[i];
    return v;
}

enum class MembershipStatus { Inside, Outside };

/// Inside: convex weights over V reproducing the query. Outside: an affine
/// separating functional, positive on the query and <= 0 on every vertex.
template <class T>
struct MembershipResult {
    MembershipStatus status = MembershipStatus::Inside;
    std::vector<T> weights;
    std::vector<T> separating_coeffs;
    T separating_offset = scalar_policy<T>::from_int(0);
    T separating_value = scalar_policy<T>::from_int(0);  // value on the query
};

namespace detail {

template <class T>
T certificate_tol() {
    if constexpr (scalar_policy<T>::exact)
        return scalar_policy<T>::from_int(0);
    else
        return T(1e-10);
}

}  // namespace detail

/// Exact-LP membership of a behavior in the convex hull of V, with the
/// certificate re-verified by substitution before returning.
template <class T>
MembershipResult<T> membership(const std::vector<T>& p, const VertexSet<T>& V) {
    if (V.vertices.empty()) throw std::invalid_argument("membership: empty vertex set");
    const std::size_t dim = p.size();
    for (const auto& v : V.vertices)
        if (v.size() != dim) throw std::invalid_argument("membership: dimension mismatch");

    LPProblem<T> lp;
    lp.A.assign(dim + 1, {});
    for (const auto& v : V.vertices) {
        for (std::size_t d = 0; d < dim; ++d) lp.A[d].push_back(v[d]);
        lp.A[dim].push_back(scalar_policy<T>::from_int(1));
    }
    lp.b.assign(p.begin(), p.end());
    lp.b.push_back(scalar_policy<T>::from_int(1));

    LPResult<T> sol = lp_solve(lp);
    MembershipResult<T> res;
    const T tol = detail::certificate_tol<T>();
    if (sol.status == LPStatus::Feasible) {
        res.status = MembershipStatus::Inside;
        res.weights = sol.solution;
        // Re-substitute: weights >= 0, sum 1, weighted vertex sum == p.
        std::vector<T> recon(dim, scalar_policy<T>::from_int(0));
        T wsum = scalar_policy<T>::from_int(0);
        for (std::size_t j = 0; j < V.vertices.size(); ++j) {
            if (res.weights[j] < -tol)
                throw lp_numeric_error("membership: negative weight in certificate");
            wsum += res.weights[j];
            for (std::size_t d = 0; d < dim; ++d)
                recon[d] += res.weights[j] * V.vertices[j][d];
        }
        if (scalar_abs(wsum - scalar_policy<T>::from_int(1)) > tol)
            throw lp_numeric_error("membership: weights do not sum to 1");
        for (std::size_t d = 0; d < dim; ++d)
            if (scalar_abs(recon[d] - p[d]) > tol)
                throw lp_numeric_error("membership: certificate fails re-substitution");
        return res;
    }

    // Farkas dual y: y.A <= 0 on every vertex column, y.b > 0 on the query.
    res.status = MembershipStatus::Outside;
    res.separating_coeffs.assign(sol.dual_certificate.begin(),
                                 sol.dual_certificate.begin() + dim);
    res.separating_offset = sol.dual_certificate[dim];
    auto eval = [&](const std::vector<T>& t) {
        T v = res.separating_offset;
        for (std::size_t d = 0; d < dim; ++d) v += res.separating_coeffs[d] * t[d];
        return v;
    };
    res.separating_value = eval(p);
    if (!(res.separating_value > tol))
        throw lp_numeric_error("membership: separating functional not positive on query");
    for (const auto& v : V.vertices)
        if (eval(v) > tol)
            throw lp_numeric_error("membership: separating functional positive on a vertex");
    return res;
}

template <class T>
struct MaxResult {
    T value;
    std::vector<std::size_t> argmax;  // indices into V, canonical order
};

/// Exact maximum of f over the vertex list; evaluation fans out over threads,
/// the reduce is a deterministic index-ordered merge.
template <class T>
MaxResult<T> max_over_vertices(const LinearFunctional<T>& f, const VertexSet<T>& V,
                               int jobs = 1) {
    if (V.vertices.empty())
        throw std::invalid_argument("max_over_vertices: empty vertex set");
    const std::size_t n = V.vertices.size();
    std::vector<T> vals(n, scalar_policy<T>::from_int(0));
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = evaluate(f, V.vertices[i]);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) vals[i] = evaluate(f, V.vertices[i]);
            });
        }
        for (auto& th : pool) th.join();
    }
    MaxResult<T> res{vals[0], {0}};
    for (std::size_t i = 1; i < n; ++i) {
        if (vals[i] > res.value) {
            res.value = vals[i];
            res.argmax = {i};
        } else if (scalar_policy<T>::eq(vals[i], res.value)) {
            res.argmax.push_back(i);
        }
    }
    return res;
}

/// All vertices with f(v) equal to the bound (exact for Rat, 1e-9 for double).
template <class T>
VertexSet<T> saturating_vertices(const LinearFunctional<T>& f, const VertexSet<T>& V) {
    VertexSet<T> out{V.scenario, V.kind, V.params, {}};
    for (const auto& v : V.vertices)
        if (scalar_policy<T>::eq(evaluate(f, v), f.bound)) out.vertices.push_back(v);
    return out;
}

template <class T>
int polytope_dim(const VertexSet<T>& V) {
    if (V.vertices.empty()) throw std::invalid_argument("polytope_dim: empty vertex set");
    return affine_rank(V.vertices);
}

template <class T>
struct FacetResult {
    bool facet = false;
    int saturating_dim = -1;  // affine dimension of the saturating set
    int polytope_dimension = 0;
    std::vector<std::vector<T>> witness;  // affinely independent saturating vertices
};

/// f is a facet of conv(V) iff its saturating set has affine dimension
/// dim - 1. The witness is grown greedily: a vertex is kept whenever it
/// raises the affine rank of the set collected so far.
template <class T>
FacetResult<T> is_facet(const LinearFunctional<T>& f, const VertexSet<T>& V) {
    MaxResult<T> mx = max_over_vertices(f, V);
    if (mx.value > f.bound && !scalar_policy<T>::eq(mx.value, f.bound))
        throw std::invalid_argument("is_facet: functional is violated by a vertex");
    FacetResult<T> res;
    res.polytope_dimension = polytope_dim(V);
    VertexSet<T> sat = saturating_vertices(f, V);
    if (sat.vertices.empty()) return res;
    res.saturating_dim = affine_rank(sat.vertices);
    res.facet = (res.saturating_dim == res.polytope_dimension - 1);
    if (res.facet) {
        for (const auto& v : sat.vertices) {
            std::vector<std::vector<T>> trial = res.witness;
            trial.push_back(v);
            if (affine_rank(trial) == static_cast<int>(trial.size()) - 1)
                res.witness = std::move(trial);
            if (static_cast<int>(res.witness.size()) == res.saturating_dim + 1) break;
        }
    }
    return res;
}

/// Builds the named inequality with marginal terms pre-expanded:
///   mdl       (joint):       l p(0000) - h [p(0101)+p(1010)+p(0011)] <= 0
///   pd_facet  (conditional): (1-e)p(00|00)+e(1-e)p(11|00)
///                             - p(01|01)-p(10|10)-p(00|11) <= e(1-e)
///   mdpdl     (joint):       l(1-e)[p(0000)+e p(1100) - e p_XY(00)]
///                             - h [p(0101)+p(1010)+p(0011)] <= 0
///   chsh      (conditional): sum of correlators, +++- signs, bound 2
///   chsh_leak (conditional): same expression, bound 2+2k
template <class T>
LinearFunctional<T> build_inequality(const std::string& name,
                                     const RelaxationParams<T>& params,
                                     const BellScenario& sc) {
    sc.validate();
    if (sc.nX != 2 || sc.nY != 2)
        throw std::invalid_argument("build_inequality: defined for the (2,2;2,2) scenario");
    const T zero = scalar_policy<T>::from_int(0);
    const T one = scalar_policy<T>::from_int(1);
    const T two = scalar_policy<T>::from_int(2);
    LinearFunctional<T> f;
    f.name = name;
    f.scenario = sc;
    f.coeffs.assign(sc.table_size(), zero);

    if (name == "mdl") {
        params.validate_input_box(sc);
        f.kind = VertexKind::Joint;
        f.coeffs[sc.index(0, 0, 0, 0)] = params.l;
        f.coeffs[sc.index(0, 1, 0, 1)] = -params.h;
        f.coeffs[sc.index(1, 0, 1, 0)] = -params.h;
        f.coeffs[sc.index(0, 0, 1, 1)] = -params.h;
        f.bound = zero;
    } else if (name == "pd_facet") {
        params.validate_eps();
        if (!scalar_policy<T>::eq(params.epsA, params.epsB))
            throw std::invalid_argument("build_inequality: pd_facet needs epsA == epsB");
        const T e = params.epsA;
        f.kind = VertexKind::Conditional;
        f.coeffs[sc.index(0, 0, 0, 0)] = one - e;
        f.coeffs[sc.index(1, 1, 0, 0)] = e * (one - e);
        f.coeffs[sc.index(0, 1, 0, 1)] = -one;
        f.coeffs[sc.index(1, 0, 1, 0)] = -one;
        f.coeffs[sc.index(0, 0, 1, 1)] = -one;
        f.bound = e * (one - e);
    } else if (name == "mdpdl") {
        params.validate_input_box(sc);
        params.validate_eps();
        if (!scalar_policy<T>::eq(params.epsA, params.epsB))
            throw std::invalid_argument("build_inequality: mdpdl needs epsA == epsB");
        const T e = params.epsA;
        f.kind = VertexKind::Joint;
        // -l(1-e)e p_XY(00) expands to -l(1-e)e on every p(ab00).
        const T m = -params.l * (one - e) * e;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) f.coeffs[sc.index(a, b, 0, 0)] = m;
        f.coeffs[sc.index(0, 0, 0, 0)] += params.l * (one - e);
        f.coeffs[sc.index(1, 1, 0, 0)] += params.l * (one - e) * e;
        f.coeffs[sc.index(0, 1, 0, 1)] = -params.h;
        f.coeffs[sc.index(1, 0, 1, 0)] = -params.h;
        f.coeffs[sc.index(0, 0, 1, 1)] = -params.h;
        f.bound = zero;
    } else if (name == "chsh" || name == "chsh_leak") {
        f.kind = VertexKind::Conditional;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const T s = (x == 1 && y == 1) ? -one : one;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        f.coeffs[sc.index(a, b, x, y)] =
                            ((a + b) % 2 == 0) ? s : -s;
            }
        if (name == "chsh_leak") {
            params.validate_kappa();
            f.bound = two + two * params.kappa;
        } else {
            f.bound = two;
        }
    } else {
        throw std::invalid_argument("build_inequality: unknown name '" + name + "'");
    }
    return f;
}

/// The 12 affinely independent saturating vertices of the pd_facet inequality,
/// as full 16-entry conditional tables (the p(00|xy) entries filled in by
/// normalization).
template <class T>
std::vector<std::vector<T>> facet_witness_vertices(const T& eps) {
    const T z = scalar_policy<T>::from_int(0);
    const T o = scalar_policy<T>::from_int(1);
    const T e = eps, g = o - eps;
    const T e2 = e * e, g2 = g * g, eg = e * g;
    // Rows give (p(01|xy), p(10|xy), p(11|xy)) for xy = 00, 01, 10, 11.
    const std::vector<std::vector<T>> rows = {
        {z, z, o,  z, z, o,  z, z, o,  z, z, o},
        {z, z, o,  z, o, z,  z, z, o,  z, o, z},
        {z, z, o,  z, z, o,  o, z, z,  o, z, z},
        {z, z, o,  z, e, g,  z, z, o,  e, z, g},
        {z, z, o,  z, g, z,  e, z, g,  z, g, e},
        {z, z, o,  z, e, g,  g, z, z,  o, z, z},
        {z, g, z,  z, z, o,  z, z, z,  o, z, z},
        {g, z, z,  z, z, z,  z, z, o,  z, o, z},
        {g, z, z,  z, e, z,  e, z, g,  z, g, e},
        {z, z, z,  g2, e2, eg,  z, z, z,  o, z, z},
        {z, z, z,  z, e, z,  e2, g2, eg,  z, z, o},
        {z, z, z,  z, z, z,  z, z, z,  eg, eg, e2}};
    BellScenario sc;
    std::vector<std::vector<T>> out;
    for (const auto& r : rows) {
        std::vector<T> v(sc.table_size());
        for (int xy = 0; xy < 4; ++xy) {
            const int x = xy / 2, y = xy % 2;
            v[sc.index(0, 1, x, y)] = r[3 * xy + 0];
            v[sc.index(1, 0, x, y)] = r[3 * xy + 1];
            v[sc.index(1, 1, x, y)] = r[3 * xy + 2];
            v[sc.index(0, 0, x, y)] = o - r[3 * xy] - r[3 * xy + 1] - r[3 * xy + 2];
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// The same 12 vertices as a 12x12 matrix M_V over the non-(00) entries,
/// columns ordered (01|00),(10|00),(11|00),(01|01),...,(11|11).
inline DenseMatrix<Rat> facet_witness_matrix(const Rat& eps) {
    const auto vs = facet_witness_vertices<Rat>(eps);
    BellScenario sc;
    DenseMatrix<Rat> m(12, 12);
    for (int r = 0; r < 12; ++r)
        for (int xy = 0; xy < 4; ++xy) {
            const int x = xy / 2, y = xy % 2;
            m.at(r, 3 * xy + 0) = vs[r][sc.index(0, 1, x, y)];
            m.at(r, 3 * xy + 1) = vs[r][sc.index(1, 0, x, y)];
            m.at(r, 3 * xy + 2) = vs[r][sc.index(1, 1, x, y)];
        }
    return m;
}

/// Structural class (1..5) of a pd_facet-saturating conditional vertex, or 0
/// if it matches none of the five shapes.
template <class T>
int saturating_class(const std::vector<T>& v, const T& eps) {
    BellScenario sc;
    const T zero = scalar_policy<T>::from_int(0);
    const T one = scalar_policy<T>::from_int(1);
    const T g2 = (one - eps) * (one - eps);
    auto eq = [](const T& a, const T& b) { return scalar_policy<T>::eq(a, b); };
    const T& p00_00 = v[sc.index(0, 0, 0, 0)];
    const T& p11_00 = v[sc.index(1, 1, 0, 0)];
    const T& p01_01 = v[sc.index(0, 1, 0, 1)];
    const T& p10_10 = v[sc.index(1, 0, 1, 0)];
    const T& p00_11 = v[sc.index(0, 0, 1, 1)];
    if (eq(p00_00, zero) && eq(p11_00, one) && eq(p01_01, zero) && eq(p10_10, zero) &&
        eq(p00_11, zero))
        return 1;
    if (eq(p00_00, eps) && eq(p11_00, zero) && eq(p01_01, zero) && eq(p10_10, zero) &&
        eq(p00_11, zero))
        return 2;
    if (eq(p00_00, one) && eq(p11_00, zero) && eq(p01_01, g2) && eq(p10_10, zero) &&
        eq(p00_11, zero))
        return 3;
    if (eq(p00_00, one) && eq(p11_00, zero) && eq(p01_01, zero) && eq(p10_10, g2) &&
        eq(p00_11, zero))
        return 4;
    if (eq(p00_00, one) && eq(p11_00, zero) && eq(p01_01, zero) && eq(p10_10, zero) &&
        eq(p00_11, g2))
        return 5;
    return 0;
}

}  // namespace bellforge
