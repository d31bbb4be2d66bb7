#pragma once

#include <vector>

namespace bellforge {

/// One sample of the guessing-probability curve.
struct GuessCurvePoint {
    double beta_obs;
    double kappa;
    double pg;
    double hmin;  // -log2(pg)
};

/// Quantum value of the CHSH expression under one-way leakage kappa:
/// 2 sqrt(2) (kappa + sqrt(1 - kappa^2)) for kappa <= 1/sqrt(2), else 4.
double beta_q(double kappa);

/// Classical bound 2 + 2 kappa.
double beta_c(double kappa);

/// Analytic bound P-bar on the guessing probability at CHSH value beta.
double pbar_g(double beta, double kappa);

/// Analytic d(P-bar)/d(beta); used by the tangency root-finder.
double pbar_g_dbeta(double beta, double kappa);

/// Tangency point beta* in [beta_c, beta_q]: the root of
/// P-bar'(b) (b - beta_c) = P-bar(b) - 1, found by bisection to 1e-10.
/// kappa = 0 degenerates to beta* = beta_c.
double beta_star(double kappa);

/// Piecewise guessing probability: P-bar for beta >= beta*, the chord through
/// (beta_c, 1) and (beta*, P-bar(beta*)) below it.
double guessing_probability(double beta, double kappa);

/// Independent grid-search check of beta_q over the angle parameterization
/// 2 sqrt(1 + sin^2(2 theta) + 2 sin(2 theta) sin(gamma)),
/// cos(gamma) <= 2 kappa^2 - 1.
double oracle_max_chsh(double kappa, int resolution = 1000);

/// n points uniformly spanning [beta_c, beta_q], ordered by beta.
std::vector<GuessCurvePoint> curve(double kappa, int n_points);

}  // namespace bellforge
