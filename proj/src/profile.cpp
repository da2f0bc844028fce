#include "qfano/profile.hpp"

#include <stdexcept>

namespace qfano {

NumericalProfile blowup_profile(const Rational& kx3, int r, const Rational& alpha) {
  if (r <= 0) throw std::invalid_argument("blowup_profile: index r must be positive");
  if (!(alpha > Rational(0))) throw std::invalid_argument("blowup_profile: alpha must be positive");
  Rational rr(r);
  NumericalProfile p;
  p.d3 = kx3 - alpha / rr;
  p.d2e = alpha;
  p.de2 = -(rr * alpha);
  p.e3 = rr * rr * alpha;
  return p;
}

NumericalProfile apply_flop(const NumericalProfile& p, const Rational& e) {
  if (!(e > Rational(0))) throw std::invalid_argument("apply_flop: e must be positive");
  NumericalProfile q = p;
  q.e3 = p.e3 - e;
  return q;
}

NumericalProfile apply_flip(const NumericalProfile& p, const FlipDatum& f) {
  if (!(f.a > Rational(0))) throw std::invalid_argument("apply_flip: ratio a must be positive");
  if (!(f.d > Rational(0))) throw std::invalid_argument("apply_flip: degree drop d must be positive");
  NumericalProfile q;
  q.d3 = p.d3 - f.d;
  q.d2e = p.d2e - f.a * f.d;
  q.de2 = p.de2 - f.a * f.a * f.d;
  q.e3 = p.e3 - f.a * f.a * f.a * f.d;
  return q;
}

NumericalProfile run_profile(const BirationalRun& run) {
  NumericalProfile p = blowup_profile(run.kx3, run.r, run.alpha);
  if (run.flop_e.sign() < 0) throw std::invalid_argument("run_profile: flop_e must be >= 0");
  if (!run.flop_e.is_zero()) p = apply_flop(p, run.flop_e);
  for (std::size_t i = 0; i < run.flips.size(); ++i) {
    if (i > 0 && !(run.flips[i].a < run.flips[i - 1].a))
      throw std::invalid_argument("run_profile: flip ratios must be strictly decreasing");
    p = apply_flip(p, run.flips[i]);
  }
  return p;
}

Rational triple(const NumericalProfile& p, const ClassCoeff& c1, const ClassCoeff& c2,
                const ClassCoeff& c3) {
  const Rational &a1 = c1.first, &b1 = c1.second;
  const Rational &a2 = c2.first, &b2 = c2.second;
  const Rational &a3 = c3.first, &b3 = c3.second;
  Rational k3 = a1 * a2 * a3;
  Rational k2e = a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3;
  Rational ke2 = a1 * b2 * b3 + b1 * a2 * b3 + b1 * b2 * a3;
  Rational eee = b1 * b2 * b3;
  return k3 * p.d3 + k2e * p.d2e + ke2 * p.de2 + eee * p.e3;
}

std::pair<Rational, Rational> triple_affine_d3(const NumericalProfile& p, const ClassCoeff& c1,
                                               const ClassCoeff& c2, const ClassCoeff& c3) {
  return {triple(p, c1, c2, c3), c1.first * c2.first * c3.first};
}

}  // namespace qfano
