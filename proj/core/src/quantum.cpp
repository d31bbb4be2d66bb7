#include "bellforge/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace bellforge {

Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

Mat2 operator*(Complex s, const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
    return r;
}

Mat2 pauli_x() { return Mat2{{Complex(0), Complex(1), Complex(1), Complex(0)}}; }
Mat2 pauli_y() {
    return Mat2{{Complex(0), Complex(0, -1), Complex(0, 1), Complex(0)}};
}
Mat2 pauli_z() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(-1)}}; }
Mat2 identity2() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(1)}}; }

std::array<Complex, 16> kron(const Mat2& a, const Mat2& b) {
    std::array<Complex, 16> r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r[(2 * i + k) * 4 + (2 * j + l)] = a.at(i, j) * b.at(k, l);
    return r;
}

TwoQubitState::TwoQubitState(std::array<Complex, 4> amplitudes) : amp_(amplitudes) {
    double n = 0.0;
    for (const Complex& a : amp_) n += std::norm(a);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("TwoQubitState: amplitudes not normalized");
}

QubitObservable::QubitObservable(Mat2 matrix) : m_(matrix) {
    if (std::abs(m_.at(0, 0).imag()) > 1e-12 || std::abs(m_.at(1, 1).imag()) > 1e-12 ||
        std::abs(m_.at(0, 1) - std::conj(m_.at(1, 0))) > 1e-12)
        throw std::invalid_argument("QubitObservable: matrix not Hermitian");
    auto b = bloch();
    if (b[0] * b[0] + b[1] * b[1] + b[2] * b[2] > 1.0 + 1e-9)
        throw std::invalid_argument("QubitObservable: Bloch vector exceeds unit length");
}

std::array<double, 3> QubitObservable::bloch() const {
    return {0.5 * (m_.at(0, 1) + m_.at(1, 0)).real(),
            0.5 * (Complex(0, 1) * (m_.at(0, 1) - m_.at(1, 0))).real(),
            0.5 * (m_.at(0, 0) - m_.at(1, 1)).real()};
}

bool QubitObservable::unit_bloch(double tol) const {
    auto b = bloch();
    const double n = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    const double tr = (m_.at(0, 0) + m_.at(1, 1)).real();
    return std::abs(n - 1.0) <= tol && std::abs(tr) <= tol;
}

double operator_norm_diff(const QubitObservable& o1, const QubitObservable& o2) {
    Mat2 d = o1.matrix() - o2.matrix();
    const double a = d.at(0, 0).real();
    const double c = d.at(1, 1).real();
    const double off = std::abs(d.at(0, 1));
    const double disc = std::sqrt((a - c) * (a - c) + 4.0 * off * off);
    const double l1 = 0.5 * ((a + c) + disc);
    const double l2 = 0.5 * ((a + c) - disc);
    return std::max(std::abs(l1), std::abs(l2));
}

namespace {

Mat2 bloch_obs(double bx, double bz) {
    Mat2 r = identity2();
    r.at(0, 0) = Complex(bz);
    r.at(1, 1) = Complex(-bz);
    r.at(0, 1) = Complex(bx);
    r.at(1, 0) = Complex(bx);
    return r;
}

}  // namespace

TwoQubitStrategy tilted_hardy_strategy(double eps) {
    if (eps < 0.0 || eps >= 1.0)
        throw std::invalid_argument("tilted_hardy_strategy: eps out of [0,1)");
    const double theta = std::asin(3.0 - std::sqrt(4.0 * eps + 5.0));
    const double s = std::sin(theta);
    TwoQubitState state({Complex(std::cos(theta / 2.0)), Complex(0), Complex(0),
                         Complex(-std::sin(theta / 2.0))});
    const double den0 = (2.0 - s) * std::sqrt(1.0 + s);
    QubitObservable a0(bloch_obs(-std::sqrt(2.0) * s * std::sqrt(s) / den0,
                                 -(2.0 + s) * std::sqrt(1.0 - s) / den0));
    QubitObservable a1(bloch_obs(std::sqrt(2.0 * s / (1.0 + s)),
                                 -std::sqrt((1.0 - s) / (1.0 + s))));
    TwoQubitStrategy st{state, {a0, a1}, {{a0}, {a1}}, 0.0};
    return st;
}

double tilted_hardy_value(double eps) {
    if (eps < 0.0 || eps >= 1.0)
        throw std::invalid_argument("tilted_hardy_value: eps out of [0,1)");
    const double r = 4.0 * eps + 5.0;
    return (r * std::sqrt(r) - (12.0 * eps + 11.0)) / (2.0 * (1.0 + eps));
}

TwoQubitStrategy chsh_leak_strategy(double kappa) {
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument("chsh_leak_strategy: kappa out of [0,1)");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    TwoQubitState state({Complex(inv_sqrt2), Complex(0), Complex(0), Complex(inv_sqrt2)});
    QubitObservable a0(bloch_obs(0.0, 1.0));  // sigma_z
    QubitObservable a1(bloch_obs(1.0, 0.0));  // sigma_x
    std::vector<std::vector<QubitObservable>> bob;
    if (kappa <= inv_sqrt2) {
        const double p = (kappa + std::sqrt(1.0 - kappa * kappa)) * inv_sqrt2;
        const double q = (-kappa + std::sqrt(1.0 - kappa * kappa)) * inv_sqrt2;
        bob.push_back({QubitObservable(bloch_obs(q, p)),
                       QubitObservable(bloch_obs(p, q))});
        bob.push_back({QubitObservable(bloch_obs(-q, p)),
                       QubitObservable(bloch_obs(-p, q))});
    } else {
        bob.push_back({a0, a1});                                     // B00=sz, B01=sx
        bob.push_back({a0, QubitObservable(bloch_obs(-1.0, 0.0))});  // B10=sz, B11=-sx
    }
    return TwoQubitStrategy{state, {a0, a1}, std::move(bob), kappa};
}

ConditionalBehavior<double> behavior_of(const TwoQubitStrategy& s) {
    BellScenario sc;
    sc.nX = static_cast<int>(s.aliceObs.size());
    sc.nY = static_cast<int>(s.bobObs.size());
    sc.validate();
    for (const auto& o : s.aliceObs)
        if (!o.unit_bloch())
            throw std::invalid_argument("behavior_of: Alice observable not unit-Bloch");
    for (const auto& row : s.bobObs)
        for (const auto& o : row)
            if (!o.unit_bloch())
                throw std::invalid_argument("behavior_of: Bob observable not unit-Bloch");

    const auto& psi = s.state.amplitudes();
    std::vector<double> out(sc.table_size());
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y) {
            const auto& brow = s.bobObs[y];
            const QubitObservable& bobO =
                brow.size() == 1 ? brow[0] : brow.at(static_cast<std::size_t>(x));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Mat2 pa = Complex(0.5) * (identity2() + Complex(a == 0 ? 1 : -1) *
                                                                s.aliceObs[x].matrix());
                    Mat2 pb = Complex(0.5) *
                              (identity2() + Complex(b == 0 ? 1 : -1) * bobO.matrix());
                    const auto op = kron(pa, pb);
                    Complex v(0);
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            v += std::conj(psi[i]) * op[i * 4 + j] * psi[j];
                    out[sc.index(a, b, x, y)] = v.real();
                }
        }
    return ConditionalBehavior<double>(sc, std::move(out));
}

double chsh_leak_value(const ConditionalBehavior<double>& cond) {
    const BellScenario& sc = cond.scenario();
    if (sc.nX != 2 || sc.nY != 2)
        throw std::invalid_argument("chsh_leak_value: needs the (2,2;2,2) scenario");
    auto corr = [&](int x, int y) {
        double e = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                e += ((a + b) % 2 == 0 ? 1.0 : -1.0) * cond.at(a, b, x, y);
        return e;
    };
    return corr(0, 0) + corr(0, 1) + corr(1, 0) - corr(1, 1);
}

}  // namespace bellforge
