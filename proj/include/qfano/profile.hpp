#ifndef QFANO_PROFILE_HPP
#define QFANO_PROFILE_HPP

#include <utility>
#include <vector>

#include "qfano/rational.hpp"

namespace qfano {

// The four intersection numbers of a pair (variety, divisor) spanning the
// rank-2 lattice <-K, E>.  They determine every triple product of classes
// a(-K) + bE by multilinearity.
struct NumericalProfile {
  Rational d3;   // (-K)^3
  Rational d2e;  // (-K)^2 E
  Rational de2;  // (-K) E^2
  Rational e3;   // E^3

  friend bool operator==(const NumericalProfile& a, const NumericalProfile& b) {
    return a.d3 == b.d3 && a.d2e == b.d2e && a.de2 == b.de2 && a.e3 == b.e3;
  }
};

// One flip: ratio a = E.l / (-K.l) on the flipping curve, degree drop d,
// and the axial weight aw of the index-2 points sitting on the curve.
// In the index-2 scenario d == aw/2, but the pair is kept checkable.
struct FlipDatum {
  Rational a;
  Rational d;
  int aw = 0;
};

// Blow-up parameters plus an optional flop and an ordered flip list.
// flop_e == 0 means no flop; the flop, when present, precedes all flips.
struct BirationalRun {
  Rational kx3;    // (-K_X)^3
  int r = 2;       // index of the blown-up point
  Rational alpha;  // (-K_Y)^2 E
  Rational flop_e; // e = E^3 - E_1^3, 0 if no flop
  std::vector<FlipDatum> flips;
};

// Class expressed in the basis {-K, E}: first = coefficient of -K.
using ClassCoeff = std::pair<Rational, Rational>;

// Profile of (Y, E) for the blow-up -K_Y = f*(-K_X) - (1/r)E at a point of
// index r with (-K_Y)^2 E = alpha.  All mixed f*(-K_X)-E terms vanish, which
// forces d2e = alpha, de2 = -r alpha, e3 = r^2 alpha, d3 = kx3 - alpha/r.
NumericalProfile blowup_profile(const Rational& kx3, int r, const Rational& alpha);

// Flop: (-K)^3, (-K)^2 E, (-K) E^2 unchanged; E^3 drops by e > 0.
NumericalProfile apply_flop(const NumericalProfile& p, const Rational& e);

// Flip with ratio a and degree drop d: the profile drops by d.(1, a, a^2, a^3).
NumericalProfile apply_flip(const NumericalProfile& p, const FlipDatum& f);

// Composition blow-up, optional flop, flips in order; the profile of (Y', E~).
// Rejects runs whose flip ratios are not strictly decreasing.
NumericalProfile run_profile(const BirationalRun& run);

// Triple product of three classes over the profile, by symmetric
// multilinear expansion.
Rational triple(const NumericalProfile& p, const ClassCoeff& c1, const ClassCoeff& c2,
                const ClassCoeff& c3);

// Same expansion with the (-K)^3 slot left symbolic: returns (value at
// d3 = p.d3, coefficient of a shift t added to d3).  Used to solve the
// case equations for (-K_X)^3, which enters the profile only through d3.
std::pair<Rational, Rational> triple_affine_d3(const NumericalProfile& p, const ClassCoeff& c1,
                                               const ClassCoeff& c2, const ClassCoeff& c3);

}  // namespace qfano

#endif
