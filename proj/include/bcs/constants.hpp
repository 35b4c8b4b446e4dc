#pragma once

namespace bcs {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Reduced Planck constant, J*s.  The dynamics is classical and hbar is an
// injectable action scale; this is the default used at the SI boundary.
inline constexpr double hbar_si = 1.054571817e-34;

}  // namespace bcs
