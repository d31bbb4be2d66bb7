#include "bellforge/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "bellforge/geometry.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/randomness.hpp"
#include "bellforge/vertices.hpp"

namespace bellforge {

namespace {

const double kSqrt5 = std::sqrt(5.0);

/// The Hardy-point conditional behavior (maximal Hardy-paradox violation).
std::vector<double> hardy_behavior() {
    BellScenario sc;
    std::vector<double> v(sc.table_size());
    auto set = [&](int x, int y, double p00, double p01, double p10, double p11) {
        v[sc.index(0, 0, x, y)] = p00;
        v[sc.index(0, 1, x, y)] = p01;
        v[sc.index(1, 0, x, y)] = p10;
        v[sc.index(1, 1, x, y)] = p11;
    };
    const double q = (7.0 - 3.0 * kSqrt5) / 2.0;
    const double r = (kSqrt5 - 1.0) / 2.0;
    set(0, 0, (5.0 * kSqrt5 - 11.0) / 2.0, q, q, r);
    set(0, 1, kSqrt5 - 2.0, 0.0, q, r);
    set(1, 0, kSqrt5 - 2.0, q, 0.0, r);
    set(1, 1, 0.0, (3.0 - kSqrt5) / 2.0, (3.0 - kSqrt5) / 2.0, kSqrt5 - 2.0);
    return v;
}

/// Product vertex from per-input marginal tables
/// (pA(0|00), pB(0|00), pA(0|01), pB(0|01), pA(0|10), pB(0|10), pA(0|11), pB(0|11)).
std::vector<double> product_vertex(const std::array<double, 8>& t) {
    BellScenario sc;
    std::vector<double> v(sc.table_size());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double a0 = t[2 * sc.input_index(x, y)];
            const double b0 = t[2 * sc.input_index(x, y) + 1];
            v[sc.index(0, 0, x, y)] = a0 * b0;
            v[sc.index(0, 1, x, y)] = a0 * (1.0 - b0);
            v[sc.index(1, 0, x, y)] = (1.0 - a0) * b0;
            v[sc.index(1, 1, x, y)] = (1.0 - a0) * (1.0 - b0);
        }
    return v;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    CriterionResult result(int id, const std::string& name, const std::string& ok_msg) {
        return {id, name, pass, pass ? ok_msg : detail.str()};
    }
};

CriterionResult criterion1() {
    Check c;
    BellScenario sc;
    for (const auto& [num, den] : {std::pair{1L, 5L}, {1L, 4L}, {1L, 2L}}) {
        const Rat eps(num, den);
        const auto V = pd_conditional_vertices(eps, eps, sc);
        c.require(V.vertices.size() == 1296,
                  "eps=" + eps.str() + " gave " + std::to_string(V.vertices.size()) +
                      " vertices, expected 1296");
    }
    const auto V0 = pd_conditional_vertices(Rat(0), Rat(0), sc);
    c.require(V0.vertices.size() == 16, "eps=0 gave " +
                                            std::to_string(V0.vertices.size()) +
                                            " vertices, expected 16");
    return c.result(1, "vertex counts", "1296 at eps in {1/5,1/4,1/2}; 16 at eps=0");
}

CriterionResult criterion2() {
    Check c;
    BellScenario sc;
    const std::vector<std::pair<long, long>> grid = {
        {1, 5}, {1, 4}, {1, 3}, {1, 2}, {3, 4}};
    for (const auto& [num, den] : grid) {
        const Rat eps(num, den);
        const std::string tag = "eps=" + eps.str() + ": ";
        RelaxationParams<Rat> params;
        params.epsA = params.epsB = eps;
        const auto V = pd_conditional_vertices(eps, eps, sc);
        const auto f = build_inequality("pd_facet", params, sc);
        const auto mx = max_over_vertices(f, V);
        c.require(mx.value == eps * (Rat(1) - eps), tag + "max != eps(1-eps)");
        const auto sat = saturating_vertices(f, V);
        c.require(sat.vertices.size() == 56,
                  tag + std::to_string(sat.vertices.size()) + " saturating, expected 56");
        std::array<int, 6> counts{};
        for (const auto& v : sat.vertices) ++counts[saturating_class(v, eps)];
        c.require(counts[0] == 0 && counts[1] == 28 && counts[2] == 16 &&
                      counts[3] == 4 && counts[4] == 4 && counts[5] == 4,
                  tag + "class counts != (28,16,4,4,4)");
        c.require(affine_rank(sat.vertices) == 11, tag + "saturating dim != 11");
        c.require(polytope_dim(V) == 12, tag + "polytope dim != 12");
        const Rat g = Rat(1) - eps;
        const Rat expect = Rat(4) * (Rat(2) - eps) * g * g * g * g * g * g * eps *
                           eps * eps * eps * eps;
        c.require(det_exact(facet_witness_matrix(eps)) == expect,
                  tag + "det(M_V) mismatch");
    }
    return c.result(2, "facet reproduction",
                    "bound, 56 saturating, classes (28,16,4,4,4), dims 11/12, det(M_V)");
}

CriterionResult criterion3() {
    Check c;
    const double eps = 0.25;
    const std::vector<double> weights = {
        (108.0 * kSqrt5 - 241.0) / 5.0,  (108.0 * kSqrt5 - 241.0) / 5.0,
        (311.0 - 138.0 * kSqrt5) / 15.0, (14.0 - 6.0 * kSqrt5) / 3.0,
        (1647.0 - 736.0 * kSqrt5) / 20.0, (1169.0 - 522.0 * kSqrt5) / 20.0,
        (882.0 * kSqrt5 - 1969.0) / 30.0, (141.0 - 63.0 * kSqrt5) / 2.0,
        (99.0 * kSqrt5 - 221.0) / 3.0};
    const double g = 1.0 - eps;
    const std::vector<std::array<double, 8>> tables = {
        {0, 0, 0, 0, 0, 0, eps, 0}, {0, 0, 0, 0, eps, 0, 0, 0},
        {0, 0, 0, 0, 1, eps, 1, 0}, {0, 0, eps, 1, 0, 0, 0, 1},
        {eps, eps, 0, 0, 0, 0, 0, 0}, {eps, g, 0, 0, 1, 1, 1, 0},
        {eps, 1, 0, 0, 1, 1, 1, 0}, {g, eps, 1, 1, 0, 0, 0, 1},
        {1, eps, 1, 1, 0, 0, 0, 1}};
    const auto hardy = hardy_behavior();
    std::vector<double> recon(hardy.size(), 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        wsum += weights[i];
        const auto v = product_vertex(tables[i]);
        for (std::size_t d = 0; d < v.size(); ++d) recon[d] += weights[i] * v[d];
    }
    c.require(std::abs(wsum - 1.0) < 1e-10, "weights do not sum to 1");
    for (std::size_t d = 0; d < hardy.size(); ++d)
        c.require(std::abs(recon[d] - hardy[d]) < 1e-10,
                  "entry " + std::to_string(d) + " off by " +
                      fmt(std::abs(recon[d] - hardy[d])));

    BellScenario sc;
    const auto V = pd_conditional_vertices(0.25, 0.25, sc);
    const auto mem = membership(hardy, V);
    c.require(mem.status == MembershipStatus::Inside,
              "membership classified the Hardy point outside");
    return c.result(3, "Table I reproduction",
                    "closed-form weights reproduce Hardy; LP certificate verified");
}

CriterionResult criterion4() {
    Check c;
    BellScenario sc;
    const double l = 0.25;
    RelaxationParams<double> params;
    params.l = params.h = l;
    const auto cond = hardy_behavior();
    std::vector<double> joint(cond.size());
    for (std::size_t i = 0; i < cond.size(); ++i) joint[i] = cond[i] * l;

    const auto mdl = build_inequality("mdl", params, sc);
    const double margin = evaluate(mdl, joint) - mdl.bound;
    const double expect = l * l * (5.0 * kSqrt5 - 11.0) / 2.0;
    c.require(std::abs(margin - expect) < 1e-10,
              "mdl margin " + fmt(margin) + " != " + fmt(expect));
    c.require(margin > 0.0, "mdl not violated");

    RelaxationParams<Rat> rp;
    rp.l = rp.h = Rat(1, 4);
    rp.epsA = rp.epsB = Rat(1, 4);
    BellScenario rsc;
    auto Vr = mdpdl_vertices(rp, rsc);
    VertexSet<double> V{rsc, VertexKind::Joint, {}, {}};
    for (const auto& v : Vr.vertices) {
        std::vector<double> dv;
        for (const Rat& x : v) dv.push_back(x.to_double());
        V.vertices.push_back(std::move(dv));
    }
    const auto mem = membership(joint, V);
    c.require(mem.status == MembershipStatus::Inside,
              "Hardy joint behavior classified outside the MDPDL set");
    return c.result(4, "strict superset", "outside MDL with the closed-form margin, inside MDPDL");
}

CriterionResult criterion5() {
    Check c;
    BellScenario sc;
    for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
        const std::string tag = "eps=" + fmt(eps) + ": ";
        const auto cond = behavior_of(tilted_hardy_strategy(eps));
        c.require(std::abs(cond.at(0, 1, 0, 1)) <= 1e-9 &&
                      std::abs(cond.at(1, 0, 1, 0)) <= 1e-9 &&
                      std::abs(cond.at(0, 0, 1, 1)) <= 1e-9,
                  tag + "Hardy zeros not satisfied");
        const double got = cond.at(0, 0, 0, 0) + eps * cond.at(1, 1, 0, 0);
        c.require(std::abs(got - tilted_hardy_value(eps)) < 1e-9,
                  tag + "closed form mismatch: " + fmt(got));
        RelaxationParams<double> params;
        params.l = params.h = 0.25;
        params.epsA = params.epsB = eps;
        const auto f = build_inequality("mdpdl", params, sc);
        std::vector<double> joint(cond.values().size());
        for (std::size_t i = 0; i < joint.size(); ++i)
            joint[i] = cond.values()[i] * 0.25;
        c.require(evaluate(f, joint) > 0.0, tag + "mdpdl margin not positive");
    }
    return c.result(5, "tilted-Hardy violation",
                    "zeros, closed form, positive mdpdl margin on the eps grid");
}

CriterionResult criterion6() {
    Check c;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (double kappa : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, inv_sqrt2, 0.8, 0.9}) {
        const std::string tag = "kappa=" + fmt(kappa) + ": ";
        const auto strat = chsh_leak_strategy(kappa);
        const double s = chsh_leak_value(behavior_of(strat));
        c.require(std::abs(s - beta_q(kappa)) < 1e-9,
                  tag + "value " + fmt(s) + " != beta_q " + fmt(beta_q(kappa)));
        for (int y = 0; y < 2; ++y) {
            const double d = operator_norm_diff(strat.bobObs[y][0], strat.bobObs[y][1]);
            c.require(d <= 2.0 * kappa + 1e-12, tag + "norm constraint violated");
            if (kappa <= inv_sqrt2)
                c.require(std::abs(d - 2.0 * kappa) < 1e-9,
                          tag + "norm constraint not tight");
        }
    }
    return c.result(6, "CHSH leakage quantum value",
                    "matches Eq. value and the operator-norm constraint on the kappa grid");
}

CriterionResult criterion7() {
    Check c;
    BellScenario sc;
    for (const auto& [num, den] : std::vector<std::pair<long, long>>{
             {0, 1}, {1, 4}, {1, 2}, {3, 4}}) {
        const Rat kappa(num, den);
        RelaxationParams<Rat> params;
        params.kappa = kappa;
        const auto V = pd_conditional_vertices(Rat(0), kappa, sc);
        const auto f = build_inequality("chsh_leak", params, sc);
        const auto mx = max_over_vertices(f, V);
        c.require(mx.value == Rat(2) + Rat(2) * kappa,
                  "kappa=" + kappa.str() + ": max " + mx.value.str() + " != 2+2kappa");
    }
    return c.result(7, "classical bound under leakage", "2+2kappa exactly on the kappa grid");
}

CriterionResult criterion8() {
    Check c;
    c.require(std::abs(guessing_probability(2.0 * std::sqrt(2.0), 0.0) - 0.5) < 1e-9,
              "P_g(2sqrt2, 0) != 1/2");
    c.require(std::abs(guessing_probability(2.0, 0.0) - 1.0) < 1e-9, "P_g(2,0) != 1");
    for (double kappa : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const std::string tag = "kappa=" + fmt(kappa) + ": ";
        const double bs = beta_star(kappa);
        const double below = guessing_probability(bs - 1e-8, kappa);
        const double above = guessing_probability(bs + 1e-8, kappa);
        c.require(std::abs(below - above) < 1e-6, tag + "discontinuity at beta*");
        const double chord =
            (pbar_g(bs, kappa) - 1.0) / (bs - beta_c(kappa));
        c.require(std::abs(chord - pbar_g_dbeta(bs, kappa)) < 1e-7,
                  tag + "tangency slope mismatch");
        const auto pts = curve(kappa, 1000);
        bool concave = true;
        for (std::size_t i = 1; i + 1 < pts.size(); ++i)
            if (pts[i + 1].pg - 2.0 * pts[i].pg + pts[i - 1].pg > 1e-8) concave = false;
        c.require(concave, tag + "curve not concave");
    }
    return c.result(8, "guessing probability",
                    "CHSH endpoints, continuity, tangency, concavity");
}

/// Frank-Wolfe projection of p onto conv(V): an LP-free membership oracle.
/// Returns +1 for certified inside (projection residual tiny), -1 for
/// certified outside (verified separating direction), 0 if undecided.
int fw_classify(const std::vector<double>& p, const std::vector<std::vector<double>>& V) {
    const std::size_t dim = p.size();
    std::vector<double> x = V[0];
    for (int iter = 0; iter < 4000; ++iter) {
        std::vector<double> grad(dim);
        for (std::size_t d = 0; d < dim; ++d) grad[d] = x[d] - p[d];
        std::size_t best = 0;
        double bestdot = 0.0;
        for (std::size_t j = 0; j < V.size(); ++j) {
            double dot = 0.0;
            for (std::size_t d = 0; d < dim; ++d) dot += grad[d] * V[j][d];
            if (j == 0 || dot < bestdot) {
                bestdot = dot;
                best = j;
            }
        }
        double gap = 0.0, step_den = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double dir = V[best][d] - x[d];
            gap += -grad[d] * dir;
            step_den += dir * dir;
        }
        if (gap < 1e-14 || step_den < 1e-18) break;
        const double gamma = std::min(1.0, gap / step_den);
        for (std::size_t d = 0; d < dim; ++d) x[d] += gamma * (V[best][d] - x[d]);
    }
    double dist2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dist2 += (x[d] - p[d]) * (x[d] - p[d]);
    if (dist2 < 1e-12) return +1;
    // Candidate separating direction: p minus its approximate projection.
    double on_p = 0.0, max_on_hull = 0.0;
    for (std::size_t j = 0; j < V.size(); ++j) {
        double dot = 0.0;
        for (std::size_t d = 0; d < dim; ++d) dot += (p[d] - x[d]) * V[j][d];
        if (j == 0 || dot > max_on_hull) max_on_hull = dot;
    }
    for (std::size_t d = 0; d < dim; ++d) on_p += (p[d] - x[d]) * p[d];
    if (on_p - max_on_hull > 1e-9) return -1;
    return 0;
}

CriterionResult criterion9() {
    Check c;
    for (double kappa : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 1.0 / std::sqrt(2.0),
                         0.8, 0.9}) {
        const double oracle = oracle_max_chsh(kappa, 1200);
        c.require(std::abs(oracle - beta_q(kappa)) <= 1e-3,
                  "kappa=" + fmt(kappa) + ": oracle " + fmt(oracle) + " vs beta_q " +
                      fmt(beta_q(kappa)));
    }

    BellScenario sc;
    const auto Vr = pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc);
    VertexSet<double> V{sc, VertexKind::Conditional, {}, {}};
    for (const auto& v : Vr.vertices) {
        std::vector<double> dv;
        for (const Rat& x : v) dv.push_back(x.to_double());
        V.vertices.push_back(std::move(dv));
    }
    const std::size_t dim = V.vertices[0].size();
    std::vector<double> centroid(dim, 0.0);
    for (const auto& v : V.vertices)
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += v[d] / V.vertices.size();

    std::mt19937 rng(20250825);
    std::uniform_int_distribution<std::size_t> pick(0, V.vertices.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int disagree_lp = 0, undecided = 0, disagree_oracle = 0;
    for (int t = 0; t < 100; ++t) {
        const bool truly_inside = t < 50;
        std::vector<double> p(dim, 0.0);
        if (truly_inside) {
            // Random convex combination, pulled halfway to the centroid.
            const int k = 2 + static_cast<int>(unit(rng) * 8);
            std::vector<double> w(k);
            double wsum = 0.0;
            for (double& wi : w) wsum += (wi = unit(rng) + 1e-3);
            for (int i = 0; i < k; ++i) {
                const auto& v = V.vertices[pick(rng)];
                for (std::size_t d = 0; d < dim; ++d) p[d] += (w[i] / wsum) * v[d];
            }
            for (std::size_t d = 0; d < dim; ++d) p[d] = 0.5 * p[d] + 0.5 * centroid[d];
        } else {
            // Push past a vertex along the ray from the centroid: every
            // product point here is extremal, so t > 1 exits the hull.
            const auto& v = V.vertices[pick(rng)];
            const double t_out = 1.15 + 0.3 * unit(rng);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + t_out * (v[d] - centroid[d]);
        }
        const auto mem = membership(p, V);
        const bool lp_inside = mem.status == MembershipStatus::Inside;
        if (lp_inside != truly_inside) ++disagree_lp;
        const int fw = fw_classify(p, V.vertices);
        if (fw == 0)
            ++undecided;
        else if ((fw > 0) != truly_inside)
            ++disagree_oracle;
    }
    c.require(disagree_lp == 0,
              std::to_string(disagree_lp) + " LP classifications disagree with ground truth");
    c.require(disagree_oracle == 0,
              std::to_string(disagree_oracle) + " oracle classifications disagree");
    c.require(undecided == 0, std::to_string(undecided) + " oracle classifications undecided");
    return c.result(9, "oracle cross-checks",
                    "angle-grid oracle matches beta_q; projection oracle and LP agree on 100 samples");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int /*jobs*/) {
    return {criterion1(), criterion2(), criterion3(), criterion4(), criterion5(),
            criterion6(), criterion7(), criterion8(), criterion9()};
}

}  // namespace bellforge
