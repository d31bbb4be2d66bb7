#pragma once

#include <cmath>
#include <type_traits>

#include "bellforge/rational.hpp"

namespace bellforge {

/// Numeric policy knobs shared by the templated modules. T is Rat (exact) or
/// double (tolerance 1e-9). Mixing policies is a compile error by construction.
template <class T>
struct scalar_policy;

template <>
struct scalar_policy<Rat> {
    static constexpr bool exact = true;
    static Rat tolerance() { return Rat(0); }
    static bool is_zero(const Rat& x) { return x == Rat(0); }
    static bool eq(const Rat& a, const Rat& b) { return a == b; }
    static double to_double(const Rat& x) { return x.to_double(); }
    static Rat from_int(long n) { return Rat(n); }
};

template <>
struct scalar_policy<double> {
    static constexpr bool exact = false;
    static double tolerance() { return 1e-9; }
    static bool is_zero(double x) { return std::abs(x) <= tolerance(); }
    static bool eq(double a, double b) { return std::abs(a - b) <= tolerance(); }
    static double to_double(double x) { return x; }
    static double from_int(long n) { return static_cast<double>(n); }
};

template <class T>
T scalar_abs(const T& x) {
    if constexpr (std::is_same_v<T, Rat>)
        return abs(x);
    else
        return std::abs(x);
}

}  // namespace bellforge
