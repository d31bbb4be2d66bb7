#pragma once

#include <utility>
#include <vector>

#include "bellforge/scenario.hpp"

namespace bellforge {

/// Joint input-output table p_ABXY(a,b,x,y). Immutable once constructed;
/// the constructor validates non-negativity and total normalization.
template <class T>
class JointBehavior {
  public:
    JointBehavior(BellScenario sc, std::vector<T> values)
        : sc_(sc), v_(std::move(values)) {
        sc_.validate();
        check_size();
        check_nonneg();
        T sum = scalar_policy<T>::from_int(0);
        for (const T& x : v_) sum += x;
        if (!scalar_policy<T>::eq(sum, scalar_policy<T>::from_int(1)))
            throw std::invalid_argument("JointBehavior: values do not sum to 1");
    }

    const BellScenario& scenario() const { return sc_; }
    const std::vector<T>& values() const { return v_; }
    const T& at(int a, int b, int x, int y) const { return v_[sc_.index(a, b, x, y)]; }

  private:
    void check_size() const {
        if (static_cast<int>(v_.size()) != sc_.table_size())
            throw std::invalid_argument("JointBehavior: wrong table size");
    }
    void check_nonneg() const {
        const T neg_tol = -scalar_policy<T>::tolerance();
        for (const T& x : v_)
            if (x < neg_tol) throw std::invalid_argument("JointBehavior: negative entry");
    }

    BellScenario sc_;
    std::vector<T> v_;
};

/// Conditional table p_AB|XY(a,b|x,y); each (x,y) block is normalized.
template <class T>
class ConditionalBehavior {
  public:
    ConditionalBehavior(BellScenario sc, std::vector<T> values)
        : sc_(sc), v_(std::move(values)) {
        sc_.validate();
        if (static_cast<int>(v_.size()) != sc_.table_size())
            throw std::invalid_argument("ConditionalBehavior: wrong table size");
        const T neg_tol = -scalar_policy<T>::tolerance();
        for (const T& x : v_)
            if (x < neg_tol) throw std::invalid_argument("ConditionalBehavior: negative entry");
        for (int x = 0; x < sc_.nX; ++x)
            for (int y = 0; y < sc_.nY; ++y) {
                T sum = scalar_policy<T>::from_int(0);
                for (int a = 0; a < sc_.nA; ++a)
                    for (int b = 0; b < sc_.nB; ++b) sum += at(a, b, x, y);
                if (!scalar_policy<T>::eq(sum, scalar_policy<T>::from_int(1)))
                    throw std::invalid_argument(
                        "ConditionalBehavior: block (x,y) not normalized");
            }
    }

    const BellScenario& scenario() const { return sc_; }
    const std::vector<T>& values() const { return v_; }
    const T& at(int a, int b, int x, int y) const { return v_[sc_.index(a, b, x, y)]; }

  private:
    BellScenario sc_;
    std::vector<T> v_;
};

/// Input distribution p_XY(x,y).
template <class T>
class InputDistribution {
  public:
    InputDistribution(BellScenario sc, std::vector<T> values)
        : sc_(sc), v_(std::move(values)) {
        sc_.validate();
        if (static_cast<int>(v_.size()) != sc_.input_cells())
            throw std::invalid_argument("InputDistribution: wrong table size");
        const T neg_tol = -scalar_policy<T>::tolerance();
        T sum = scalar_policy<T>::from_int(0);
        for (const T& x : v_) {
            if (x < neg_tol) throw std::invalid_argument("InputDistribution: negative entry");
            sum += x;
        }
        if (!scalar_policy<T>::eq(sum, scalar_policy<T>::from_int(1)))
            throw std::invalid_argument("InputDistribution: values do not sum to 1");
    }

    const BellScenario& scenario() const { return sc_; }
    const std::vector<T>& values() const { return v_; }
    const T& at(int x, int y) const { return v_[sc_.input_index(x, y)]; }

  private:
    BellScenario sc_;
    std::vector<T> v_;
};

/// p_ABXY = p_AB|XY * p_XY.
template <class T>
JointBehavior<T> joint_from_conditional(const ConditionalBehavior<T>& cond,
                                        const InputDistribution<T>& inp) {
    if (!(cond.scenario() == inp.scenario()))
        throw std::invalid_argument("joint_from_conditional: scenario mismatch");
    const BellScenario& sc = cond.scenario();
    std::vector<T> out(sc.table_size());
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b)
                    out[sc.index(a, b, x, y)] = cond.at(a, b, x, y) * inp.at(x, y);
    return JointBehavior<T>(sc, std::move(out));
}

/// Party marginals pA(a|x,y), pB(b|x,y), each indexed (x*nY+y)*2 + outcome.
template <class T>
struct Marginals {
    std::vector<T> pA;
    std::vector<T> pB;
};

template <class T>
Marginals<T> marginals(const ConditionalBehavior<T>& cond) {
    const BellScenario& sc = cond.scenario();
    Marginals<T> m;
    m.pA.assign(sc.input_cells() * sc.nA, scalar_policy<T>::from_int(0));
    m.pB.assign(sc.input_cells() * sc.nB, scalar_policy<T>::from_int(0));
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) {
                    m.pA[sc.input_index(x, y) * sc.nA + a] += cond.at(a, b, x, y);
                    m.pB[sc.input_index(x, y) * sc.nB + b] += cond.at(a, b, x, y);
                }
    return m;
}

/// Worst-case total-variation shift of each party's marginal when the other
/// party changes input: dA over (x; y,y'), dB over (y; x,x').
template <class T>
std::pair<T, T> signaling_deficit(const ConditionalBehavior<T>& cond) {
    const BellScenario& sc = cond.scenario();
    Marginals<T> m = marginals(cond);
    const T half = scalar_policy<T>::from_int(1) / scalar_policy<T>::from_int(2);
    T dA = scalar_policy<T>::from_int(0);
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int y2 = y + 1; y2 < sc.nY; ++y2) {
                T tv = scalar_policy<T>::from_int(0);
                for (int a = 0; a < sc.nA; ++a)
                    tv += scalar_abs(m.pA[sc.input_index(x, y) * sc.nA + a] -
                                     m.pA[sc.input_index(x, y2) * sc.nA + a]);
                tv = tv * half;
                if (tv > dA) dA = tv;
            }
    T dB = scalar_policy<T>::from_int(0);
    for (int y = 0; y < sc.nY; ++y)
        for (int x = 0; x < sc.nX; ++x)
            for (int x2 = x + 1; x2 < sc.nX; ++x2) {
                T tv = scalar_policy<T>::from_int(0);
                for (int b = 0; b < sc.nB; ++b)
                    tv += scalar_abs(m.pB[sc.input_index(x, y) * sc.nB + b] -
                                     m.pB[sc.input_index(x2, y) * sc.nB + b]);
                tv = tv * half;
                if (tv > dB) dB = tv;
            }
    return {dA, dB};
}

/// Recovers p_AB|XY from a joint behavior wherever p_XY(x,y) > 0; blocks with
/// zero input mass are filled uniformly so the result stays normalized.
template <class T>
ConditionalBehavior<T> condition_on_inputs(const JointBehavior<T>& joint) {
    const BellScenario& sc = joint.scenario();
    std::vector<T> out(sc.table_size());
    const T uniform = scalar_policy<T>::from_int(1) / scalar_policy<T>::from_int(sc.nA * sc.nB);
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y) {
            T mass = scalar_policy<T>::from_int(0);
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) mass += joint.at(a, b, x, y);
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b)
                    out[sc.index(a, b, x, y)] =
                        scalar_policy<T>::is_zero(mass) ? uniform
                                                        : joint.at(a, b, x, y) / mass;
        }
    return ConditionalBehavior<T>(sc, std::move(out));
}

}  // namespace bellforge
