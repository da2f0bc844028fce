#ifndef QFANO_RIEMANN_ROCH_HPP
#define QFANO_RIEMANN_ROCH_HPP

#include <stdexcept>

#include "qfano/rational.hpp"

namespace qfano {

// Index-2 singular Riemann-Roch toolkit.

// Input for the chi formula.  The cubic term D(D-K)(2D-K) and D.c2 arrive as
// precomputed scalars; n_q collects the -1/8 corrections over non-Cartier
// index-2 points.
struct RRInput {
  Rational chi_O;
  Rational d_term;
  Rational d_c2;
  int n_q = 0;
};

inline Rational chi_of_divisor(const RRInput& in) {
  if (in.n_q < 0) throw std::invalid_argument("chi_of_divisor: n_q must be >= 0");
  return in.chi_O + in.d_term / Rational(12) + in.d_c2 / Rational(12) -
         Rational(in.n_q, 8);
}

// h^0(-K) = 3 + (-K)^3/2 - N/4 for a weak Q-Fano 3-fold of Gorenstein index 2
// with N index-2 axial weights.  Callers needing an integer h reject
// non-integer results themselves.
inline Rational h0_antik(const Rational& kx3, int N) {
  if (!(kx3 > Rational(0))) throw std::invalid_argument("h0_antik: (-K)^3 must be positive");
  if (N < 0) throw std::invalid_argument("h0_antik: N must be >= 0");
  return Rational(3) + kx3 / Rational(2) - Rational(N, 4);
}

// -K.c2 = 24 - 3N/2.
inline Rational k_c2(int N) {
  if (N < 0) throw std::invalid_argument("k_c2: N must be >= 0");
  return Rational(24) - Rational(3 * static_cast<long long>(N), 2);
}

// Positivity of -K.c2, equivalently N <= 15.
inline bool aw_bound_ok(int N) { return k_c2(N) > Rational(0); }

}  // namespace qfano

#endif
