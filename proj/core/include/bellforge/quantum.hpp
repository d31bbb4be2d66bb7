#pragma once

#include <array>
#include <complex>
#include <vector>

#include "bellforge/behavior.hpp"

namespace bellforge {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    Complex& at(int r, int c) { return m[r * 2 + c]; }
    const Complex& at(int r, int c) const { return m[r * 2 + c]; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b);
    friend Mat2 operator-(const Mat2& a, const Mat2& b);
    friend Mat2 operator*(Complex s, const Mat2& a);
};

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 identity2();

/// 4x4 Kronecker product, row-major.
std::array<Complex, 16> kron(const Mat2& a, const Mat2& b);

/// Pure two-qubit state, basis order |00>, |01>, |10>, |11>.
class TwoQubitState {
  public:
    explicit TwoQubitState(std::array<Complex, 4> amplitudes);
    const std::array<Complex, 4>& amplitudes() const { return amp_; }

  private:
    std::array<Complex, 4> amp_;
};

/// Hermitian 2x2 observable with +-1 eigenvalues (unit Bloch vector).
class QubitObservable {
  public:
    explicit QubitObservable(Mat2 matrix);
    const Mat2& matrix() const { return m_; }
    /// (x, y, z) Bloch components; observable = bloch . sigma + (trace/2) I.
    std::array<double, 3> bloch() const;
    bool unit_bloch(double tol = 1e-9) const;

  private:
    Mat2 m_;
};

/// State + per-input observables. bobObs[y] holds one observable when Bob's
/// setting is independent of x, or two (indexed by x) under input leakage.
struct TwoQubitStrategy {
    TwoQubitState state;
    std::vector<QubitObservable> aliceObs;               // per x
    std::vector<std::vector<QubitObservable>> bobObs;    // per y, then per x
    double kappa = 0.0;
};

/// Largest absolute eigenvalue of O1 - O2 (closed form for 2x2 Hermitian).
double operator_norm_diff(const QubitObservable& o1, const QubitObservable& o2);

/// Partially entangled strategy violating the pd_facet inequality:
/// |psi> = cos(t/2)|00> - sin(t/2)|11>, t = arcsin(3 - sqrt(4 eps + 5)),
/// with B0 = A0, B1 = A1.
TwoQubitStrategy tilted_hardy_strategy(double eps);

/// Closed-form p(00|00) + eps p(11|00) of the tilted-Hardy strategy:
/// ((4 eps + 5)^{3/2} - (12 eps + 11)) / (2 (1 + eps)).
double tilted_hardy_value(double eps);

/// Maximally entangled strategy achieving the quantum CHSH value under
/// one-way leakage kappa; Bob's observables depend on x, with
/// ||B_{y,0} - B_{y,1}|| = 2 kappa for kappa <= 1/sqrt(2).
TwoQubitStrategy chsh_leak_strategy(double kappa);

/// p(a,b|x,y) = <psi| P^a_x (x) P^b_{y[,x]} |psi> with P = (I +- O)/2.
ConditionalBehavior<double> behavior_of(const TwoQubitStrategy& s);

/// <A0 B_{0,0}> + <A0 B_{1,0}> + <A1 B_{0,1}> - <A1 B_{1,1}> with correlators
/// sum_{ab} (-1)^{a+b} p(ab|xy).
double chsh_leak_value(const ConditionalBehavior<double>& cond);

}  // namespace bellforge
