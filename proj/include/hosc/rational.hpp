#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hosc {

/// Exact rational arithmetic for trace-formula phases and commensurate
/// energies. Phases are carried in *turns* (full revolutions) so that the
/// selection rules reduce to exact integer statements.
using Fraction = boost::rational<std::int64_t>;

/// Reduce a phase fraction into [0, 1) turns.
inline Fraction mod1(const Fraction& x) {
    const std::int64_t whole = x.numerator() >= 0
        ? x.numerator() / x.denominator()
        : -((-x.numerator() + x.denominator() - 1) / x.denominator());
    return x - Fraction(whole);
}

inline bool is_integer(const Fraction& x) { return x.denominator() == 1; }

inline double to_double(const Fraction& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

/// Convert a phase in turns to radians, after exact mod-1 reduction.
inline double turns_to_radians(const Fraction& turns) {
    return 2.0 * std::numbers::pi * to_double(mod1(turns));
}

} // namespace hosc
