#include "bellforge/randomness.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bellforge {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_kappa(double kappa, const char* who) {
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument(std::string(who) + ": kappa out of [0,1)");
}

void check_beta(double beta, double kappa, const char* who) {
    if (beta < beta_c(kappa) - 1e-9 || beta > beta_q(kappa) + 1e-9)
        throw std::invalid_argument(std::string(who) +
                                    ": beta outside [beta_c, beta_q]");
}

double clamp0(double x) { return x < 0.0 ? 0.0 : x; }

}  // namespace

double beta_q(double kappa) {
    check_kappa(kappa, "beta_q");
    if (kappa >= kInvSqrt2) return 4.0;
    return 2.0 * std::sqrt(2.0) * (kappa + std::sqrt(1.0 - kappa * kappa));
}

double beta_c(double kappa) {
    check_kappa(kappa, "beta_c");
    return 2.0 + 2.0 * kappa;
}

double pbar_g(double beta, double kappa) {
    check_kappa(kappa, "pbar_g");
    check_beta(beta, kappa, "pbar_g");
    if (kappa <= kInvSqrt2) {
        const double m = 2.0 - 4.0 * kappa * kappa;
        const double u =
            std::sqrt(clamp0(beta * beta - m * m)) - 4.0 * kappa * std::sqrt(1.0 - kappa * kappa);
        return 0.5 + 0.25 * std::sqrt(clamp0(4.0 - u * u));
    }
    return 0.5 + 0.25 * std::sqrt(clamp0(beta * (4.0 - beta)));
}

double pbar_g_dbeta(double beta, double kappa) {
    check_kappa(kappa, "pbar_g_dbeta");
    check_beta(beta, kappa, "pbar_g_dbeta");
    if (kappa <= kInvSqrt2) {
        const double m = 2.0 - 4.0 * kappa * kappa;
        const double r = std::sqrt(clamp0(beta * beta - m * m));
        const double u = r - 4.0 * kappa * std::sqrt(1.0 - kappa * kappa);
        const double root = std::sqrt(clamp0(4.0 - u * u));
        return -u * (beta / r) / (4.0 * root);
    }
    return (4.0 - 2.0 * beta) / (8.0 * std::sqrt(clamp0(beta * (4.0 - beta))));
}

double beta_star(double kappa) {
    check_kappa(kappa, "beta_star");
    const double bc = beta_c(kappa);
    // At kappa = 0, P-bar(beta_c) = 1 already, so the chord piece is
    // degenerate and the stitch point sits at the classical bound.
    if (kappa == 0.0) return bc;
    const double bq = beta_q(kappa);
    auto g = [&](double b) {
        return pbar_g_dbeta(b, kappa) * (b - bc) - (pbar_g(b, kappa) - 1.0);
    };
    double lo = bc + 1e-9, hi = bq - 1e-9;
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) {
        std::ostringstream os;
        os << "beta_star: no sign change on [" << lo << ", " << hi
           << "], residuals " << glo << " and " << ghi;
        throw std::runtime_error(os.str());
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double guessing_probability(double beta, double kappa) {
    check_kappa(kappa, "guessing_probability");
    check_beta(beta, kappa, "guessing_probability");
    const double bs = beta_star(kappa);
    if (beta >= bs) return pbar_g(beta, kappa);
    const double bc = beta_c(kappa);
    const double ps = pbar_g(bs, kappa);
    // Chord through (beta_c, 1) and (beta*, P-bar(beta*)).
    return 1.0 + (ps - 1.0) * (beta - bc) / (bs - bc);
}

double oracle_max_chsh(double kappa, int resolution) {
    check_kappa(kappa, "oracle_max_chsh");
    if (resolution < 10)
        throw std::invalid_argument("oracle_max_chsh: resolution too small");
    const double cos_cap = 2.0 * kappa * kappa - 1.0;
    const double pi = std::numbers::pi;
    // Uniform gamma grid plus the two points where the constraint
    // cos(gamma) <= cos_cap is tight; the optimum sits on that boundary for
    // kappa < 1/sqrt(2), and a pure grid misses it at first order.
    std::vector<double> gammas;
    gammas.reserve(resolution + 3);
    for (int j = 0; j <= resolution; ++j) gammas.push_back(2.0 * pi * j / resolution);
    if (cos_cap >= -1.0 && cos_cap <= 1.0) {
        const double gb = std::acos(cos_cap);
        gammas.push_back(gb);
        gammas.push_back(2.0 * pi - gb);
    }
    double best = 0.0;
    for (int i = 0; i <= resolution; ++i) {
        const double theta = (pi / 4.0) * i / resolution;
        const double s2t = std::sin(2.0 * theta);
        for (const double gamma : gammas) {
            if (std::cos(gamma) > cos_cap + 1e-15) continue;
            const double v =
                2.0 * std::sqrt(clamp0(1.0 + s2t * s2t + 2.0 * s2t * std::sin(gamma)));
            if (v > best) best = v;
        }
    }
    return best;
}

std::vector<GuessCurvePoint> curve(double kappa, int n_points) {
    check_kappa(kappa, "curve");
    if (n_points < 2) throw std::invalid_argument("curve: need at least two points");
    const double bc = beta_c(kappa), bq = beta_q(kappa);
    std::vector<GuessCurvePoint> out;
    out.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double beta = bc + (bq - bc) * i / (n_points - 1);
        const double pg = guessing_probability(beta, kappa);
        const double hmin = pg >= 1.0 ? 0.0 : -std::log2(pg);
        out.push_back({beta, kappa, pg, hmin});
    }
    return out;
}

}  // namespace bellforge
