#pragma once

#include <stdexcept>

#include "bellforge/scalar.hpp"

namespace bellforge {

/// Outcome/input counts of a bipartite Bell scenario. The vertex theorem this
/// library is built on is proven for binary outcomes only, so nA = nB = 2 is
/// enforced here once and for all.
struct BellScenario {
    int nA = 2;
    int nB = 2;
    int nX = 2;
    int nY = 2;

    void validate() const {
        if (nA != 2 || nB != 2)
            throw std::invalid_argument("BellScenario: only binary outcomes are supported");
        if (nX < 2 || nY < 2)
            throw std::invalid_argument("BellScenario: need at least two inputs per party");
    }

    int input_cells() const { return nX * nY; }
    int table_size() const { return nX * nY * nA * nB; }

    /// Flat row-major index, (x, y, a, b) nesting. Fixed and stable.
    int index(int a, int b, int x, int y) const {
        return ((x * nY + y) * nA + a) * nB + b;
    }
    int input_index(int x, int y) const { return x * nY + y; }

    friend bool operator==(const BellScenario&, const BellScenario&) = default;
};

/// Relaxation knobs: the (l,h) input box, the per-party total-variation bounds,
/// and the one-way leakage bound kappa.
template <class T>
struct RelaxationParams {
    T l = scalar_policy<T>::from_int(0);
    T h = scalar_policy<T>::from_int(1);
    T epsA = scalar_policy<T>::from_int(0);
    T epsB = scalar_policy<T>::from_int(0);
    T kappa = scalar_policy<T>::from_int(0);

    void validate_input_box(const BellScenario& sc) const {
        const T zero = scalar_policy<T>::from_int(0);
        const T one = scalar_policy<T>::from_int(1);
        if (!(zero < l) || !(l <= h) || !(h <= one))
            throw std::invalid_argument("RelaxationParams: need 0 < l <= h <= 1");
        const T cells = scalar_policy<T>::from_int(sc.input_cells());
        if (l * cells > one || h * cells < one)
            throw std::invalid_argument("RelaxationParams: infeasible (l,h) input box");
    }

    void validate_eps() const {
        const T zero = scalar_policy<T>::from_int(0);
        const T one = scalar_policy<T>::from_int(1);
        if (epsA < zero || !(epsA < one) || epsB < zero || !(epsB < one))
            throw std::invalid_argument("RelaxationParams: eps out of [0,1)");
    }

    void validate_kappa() const {
        const T zero = scalar_policy<T>::from_int(0);
        const T one = scalar_policy<T>::from_int(1);
        if (kappa < zero || !(kappa < one))
            throw std::invalid_argument("RelaxationParams: kappa out of [0,1)");
    }

    void validate(const BellScenario& sc) const {
        validate_input_box(sc);
        validate_eps();
        validate_kappa();
    }
};

}  // namespace bellforge
