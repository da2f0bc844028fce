#include "qfano/contraction.hpp"

#include <cassert>
#include <stdexcept>

namespace qfano {

namespace {

const ClassCoeff kK{Rational(1), Rational(0)};

Rational half(long long n) { return Rational(n, 2); }

}  // namespace

// ---------------------------------------------------------------------------
// Point-contraction table
// ---------------------------------------------------------------------------

const std::vector<PointContractionData>& load_point_contraction_table() {
  static const std::vector<PointContractionData> table = [] {
    struct Raw {
      const char* kind;
      int d;
      int rp;
      Rational ep3;
    };
    const Raw raw[] = {
        {"E2", 2, 1, Rational(1)},     {"E3/E4", 1, 1, Rational(2)},
        {"E5", 1, 2, Rational(4)},     {"E6", 3, 1, half(1)},
        {"E7", 1, 1, half(1)},         {"E8", 1, 1, Rational(1)},
        {"E9", 1, 1, half(3)},         {"E10", 1, 1, Rational(2)},
        {"E11", 1, 2, Rational(4)},    {"E12", 1, 3, half(9)},
    };
    std::vector<PointContractionData> t;
    for (const Raw& r : raw) {
      PointContractionData row;
      row.kind = r.kind;
      row.disc_num = r.d;
      row.target_index = r.rp;
      row.ep3 = r.ep3;
      Rational disc = Rational(r.d) / Rational(r.rp);
      row.k_ep2 = -(disc * r.ep3);
      row.k2_ep = disc * disc * r.ep3;
      t.push_back(row);
    }
    return t;
  }();
  return table;
}

const PointContractionData* find_point_contraction(const std::string& kind) {
  std::string key = kind;
  if (key == "E3" || key == "E4") key = "E3/E4";
  for (const PointContractionData& row : load_point_contraction_table())
    if (row.kind == key) return &row;
  // merged output tags such as "E5/E11" name rows with identical data; any
  // component resolves them
  std::size_t slash = key.find('/');
  if (slash != std::string::npos) return find_point_contraction(key.substr(0, slash));
  return nullptr;
}

// ---------------------------------------------------------------------------
// Case evaluations against a Y' profile
// ---------------------------------------------------------------------------

CaseOutcome eval_case_E1(const NumericalProfile& p, const ClassCoefficients& cc) {
  CaseOutcome out;
  if (cc.z.sign() <= 0 || cc.u.sign() <= 0) {
    out.violations.push_back("positivity: z and u must be positive");
    return out;
  }
  ClassCoeff eprime{cc.z, -cc.u};
  ClassCoeff k_plus_e{Rational(1) + cc.z, -cc.u};
  ClassCoeff k_minus_e{Rational(1) - cc.z, cc.u};

  out.kx_prime_3 = triple(p, k_plus_e, k_plus_e, kK);
  Rational excess = triple(p, k_plus_e, k_plus_e, eprime);
  out.residuals.emplace_back("e1:excess", excess);
  out.l_C = triple(p, k_plus_e, eprime, kK);
  out.ke_prime_2 = triple(p, k_minus_e, k_minus_e, eprime);
  out.genus_slack = (Rational(8) - *out.ke_prime_2) / Rational(2);

  Rational k = (cc.z + Rational(1)) / cc.u;
  if (!(k.is_integer() && k.sign() > 0))
    out.violations.push_back("target-divisibility: (z+1)/u must be a positive integer");
  if (!excess.is_zero()) out.violations.push_back("equation e1:excess must vanish");
  if (!(*out.kx_prime_3 > Rational(0)))
    out.violations.push_back("degree-positivity: (-K_{X'})^3 must be > 0");
  if (!(*out.l_C > Rational(0)))
    out.violations.push_back("curve-degree: -K_{X'}.C must be > 0");
  if (!(Rational(8) - *out.ke_prime_2).is_integer() || !out.genus_slack->is_integer())
    out.violations.push_back("parity: (-K_{E'})^2 must be an even integer");
  else if (out.genus_slack->sign() < 0)
    out.violations.push_back("genus-budget: 4g+m must be non-negative");

  out.valid = out.violations.empty();
  return out;
}

CaseOutcome eval_case_point(const NumericalProfile& p, const ClassCoefficients& cc,
                            const PointContractionData& data) {
  CaseOutcome out;
  if (cc.z.sign() <= 0 || cc.u.sign() <= 0) {
    out.violations.push_back("positivity: z and u must be positive");
    return out;
  }
  ClassCoeff eprime{cc.z, -cc.u};
  Rational cube = triple(p, eprime, eprime, eprime);
  Rational ke2 = triple(p, kK, eprime, eprime);
  Rational k2e = triple(p, kK, kK, eprime);
  out.residuals.emplace_back("pt:cube", cube - data.ep3);
  out.residuals.emplace_back("pt:ke2", ke2 - data.k_ep2);
  out.residuals.emplace_back("pt:k2e", k2e - data.k2_ep);

  Rational disc = Rational(data.disc_num) / Rational(data.target_index);
  ClassCoeff pullback{Rational(1) + disc * cc.z, -(disc * cc.u)};
  out.kx_prime_3 = triple(p, pullback, pullback, pullback);

  Rational k = (cc.z * Rational(data.disc_num) + Rational(data.target_index)) / cc.u;
  if (!(k.is_integer() && k.sign() > 0))
    out.violations.push_back("target-divisibility: (zd+r')/u must be a positive integer");
  for (const auto& r : out.residuals)
    if (!r.second.is_zero()) out.violations.push_back("equation " + r.first + " must vanish");
  if (!(*out.kx_prime_3 > Rational(0)))
    out.violations.push_back("degree-positivity: (-K_{X'})^3 must be > 0");

  out.valid = out.violations.empty();
  return out;
}

CaseOutcome eval_case_C(const NumericalProfile& p, const ClassCoefficients& cc, ConicBase base) {
  CaseOutcome out;
  if (cc.z.sign() <= 0 || cc.u.sign() <= 0) {
    out.violations.push_back("positivity: z and u must be positive");
    return out;
  }
  Rational m = cc.u / cc.z;
  if (!(m == Rational(1) || m == Rational(2)))
    out.violations.push_back("fibration-ratio: u/z must be 1 or 2");

  ClassCoeff L{cc.z, -cc.u};
  Rational l3 = triple(p, L, L, L);
  out.residuals.emplace_back("c:l3", l3);
  out.two_l2 = triple(p, kK, L, L);
  Rational k2l = triple(p, kK, kK, L);
  Rational target_2l2 = base == ConicBase::P2 ? Rational(2) : Rational(4);
  Rational four_kc2 = base == ConicBase::P2 ? Rational(12) : Rational(16);
  out.delta_l = four_kc2 - k2l;

  if (!l3.is_zero()) out.violations.push_back("equation c:l3 must vanish");
  if (*out.two_l2 != target_2l2)
    out.violations.push_back("base-degree: (-K)L^2 must equal " + target_2l2.str());
  if (!out.delta_l->is_integer())
    out.violations.push_back("discriminant-degree: deg Delta must be an integer");
  else if (out.delta_l->sign() < 0)
    out.violations.push_back("discriminant-degree: deg Delta must be >= 0");

  out.valid = out.violations.empty();
  return out;
}

CaseOutcome eval_case_D(const NumericalProfile& p, const ClassCoefficients& cc) {
  CaseOutcome out;
  if (cc.z.sign() <= 0 || cc.u.sign() <= 0) {
    out.violations.push_back("positivity: z and u must be positive");
    return out;
  }
  Rational m = cc.u / cc.z;
  if (!(m == Rational(1) || m == half(3) || m == Rational(2) || m == Rational(3)))
    out.violations.push_back("fibration-ratio: u/z must be 1, 3/2, 2 or 3");

  ClassCoeff L{cc.z, -cc.u};
  ClassCoeff Et{Rational(0), Rational(1)};
  Rational kl2 = triple(p, kK, L, L);
  Rational el2 = triple(p, Et, L, L);
  out.residuals.emplace_back("d:kl2", kl2);
  out.residuals.emplace_back("d:el2", el2);
  out.deg_F = triple(p, kK, kK, L);

  if (!kl2.is_zero()) out.violations.push_back("equation d:kl2 must vanish");
  if (!el2.is_zero()) out.violations.push_back("equation d:el2 must vanish");
  if (!out.deg_F->is_integer() || out.deg_F->sign() <= 0 || *out.deg_F > Rational(9))
    out.violations.push_back("degree-range: (-K_F)^2 must be an integer in 1..9");

  out.valid = out.violations.empty();
  return out;
}

CaseOutcome eval_case_crepant(const NumericalProfile& p, const ClassCoefficients& cc) {
  CaseOutcome out;
  if (cc.z.sign() <= 0 || cc.u.sign() <= 0) {
    out.violations.push_back("positivity: z and u must be positive");
    return out;
  }
  Rational residual = cc.z * p.d3 - cc.u * p.d2e;
  out.residuals.emplace_back("crep:support", residual);
  out.kx_prime_3 = p.d3;
  if (!residual.is_zero()) out.violations.push_back("equation crep:support must vanish");
  if (!(cc.u == half(1) || cc.u == Rational(1) || cc.u == Rational(2)))
    out.violations.push_back("crepant-fiber: u(E.l)=2 needs u in {1/2, 1, 2}");
  out.valid = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms in the run data
// ---------------------------------------------------------------------------

PrimedEval primed_eval_E1(const BirationalRun& run, const ClassCoefficients& cc) {
  const Rational alpha = run.alpha;
  const Rational r(run.r);
  const Rational K3 = run.kx3 - alpha / r;
  const Rational e = run.flop_e;
  const Rational& u = cc.u;
  const Rational k = (cc.z + Rational(1)) / cc.u;

  Rational sum_sq, sum_mix, sum_lc, sum_budget;
  for (const FlipDatum& f : run.flips) {
    Rational am = f.a - k;
    sum_sq += f.d * am * am;
    sum_mix += f.d * (u * am * am * am + am * am);
    sum_lc += f.d * am * (f.a * u - k * u + Rational(1));
    sum_budget += f.d * f.a * am * am;
  }

  PrimedEval pe;
  Rational kx3p = u * u * (k * k * K3 - (Rational(2) * k + r) * alpha - sum_sq);
  pe.values.emplace_back("e1:kx3'", kx3p);
  Rational uk1 = u * k - Rational(1);
  // u^2 times the reduced form, matching the unreduced cube of the direct route
  Rational excess = u * u *
                    (uk1 * k * k * K3 -
                     (u * r * r + (Rational(3) * u * k - Rational(1)) * r +
                      k * (Rational(3) * u * k - Rational(2))) *
                         alpha +
                     sum_mix + e * u);
  pe.values.emplace_back("e1:excess", excess);
  Rational lc = u * (k * uk1 * K3 - (Rational(2) * u * k - Rational(1) + u * r) * alpha - sum_lc);
  pe.values.emplace_back("e1:lc", lc);
  // budget: e + sum d_i a_i (a_i-k)^2 == (r+k)^2 alpha - ((uk-1)/u^3) kx3'
  pe.values.emplace_back("e1:budget-lhs", e + sum_budget);
  pe.values.emplace_back("e1:budget-rhs",
                         (r + k) * (r + k) * alpha - uk1 / (u * u * u) * kx3p);
  return pe;
}

PrimedEval primed_eval_point(const BirationalRun& run, const ClassCoefficients& cc,
                             const PointContractionData& data) {
  const Rational alpha = run.alpha;
  const Rational r(run.r);
  const Rational K3 = run.kx3 - alpha / r;
  const Rational e = run.flop_e;
  const Rational &z = cc.z, &u = cc.u;
  const Rational d(data.disc_num);
  const Rational rp(data.target_index);
  const Rational k = (z * d + rp) / u;

  Rational t1, t2, t3, budget, grade;
  for (const FlipDatum& f : run.flips) {
    Rational w = u * f.a - z;
    t1 += f.d * w;
    t2 += f.d * w * w;
    t3 += f.d * w * w * w;
    budget += f.d * f.a * w * w;
    grade += f.d * f.a * w;
  }

  PrimedEval pe;
  pe.values.emplace_back("pt:cube", z * z * z * K3 -
                                        u * alpha * (u * u * r * r + Rational(3) * z * u * r +
                                                     Rational(3) * z * z) +
                                        t3 + u * u * u * e);
  pe.values.emplace_back("pt:ke2",
                         z * z * K3 - u * alpha * (Rational(2) * z + u * r) - t2);
  pe.values.emplace_back("pt:k2e", z * K3 - u * alpha + t1);
  // budget: sum d_i a_i (a_i u - z)^2 + u^2 e == alpha (z + ur)^2 + (k/r') ep3
  pe.values.emplace_back("pt:budget-lhs", budget + u * u * e);
  pe.values.emplace_back("pt:budget-rhs",
                         alpha * (z + u * r) * (z + u * r) + k / rp * data.ep3);
  // grade: alpha (z + ur) + sum d_i a_i (a_i u - z) == (dk/r'^2) ep3
  pe.values.emplace_back("pt:grade-lhs", alpha * (z + u * r) + grade);
  pe.values.emplace_back("pt:grade-rhs", d * k / (rp * rp) * data.ep3);
  return pe;
}

PrimedEval primed_eval_C(const BirationalRun& run, const ClassCoefficients& cc) {
  const Rational alpha = run.alpha;
  const Rational r(run.r);
  const Rational K3 = run.kx3 - alpha / r;
  const Rational e = run.flop_e;
  const Rational& z = cc.z;
  const Rational m = cc.u / cc.z;

  Rational c1, c2, c3, budget;
  for (const FlipDatum& f : run.flips) {
    Rational w = m * f.a - Rational(1);
    c1 += f.d * w;
    c2 += f.d * w * w;
    c3 += f.d * w * w * w;
    budget += f.d * m * f.a * w * w;
  }

  PrimedEval pe;
  pe.values.emplace_back(
      "c:l3", z * z * z *
                  (K3 - m * alpha * (m * m * r * r + Rational(3) * m * r + Rational(3)) + c3 +
                   m * m * m * e));
  pe.values.emplace_back("c:kl2",
                         z * z * (K3 - m * alpha * (Rational(2) + m * r) - c2));
  pe.values.emplace_back("c:k2l", z * (K3 - m * alpha + c1));
  // budget: z^2 { sum d_i m a_i (m a_i - 1)^2 + m^3 e } == z^2 m alpha (mr+1)^2 - 2l^2
  pe.values.emplace_back("c:budget-lhs", z * z * (budget + m * m * m * e));
  pe.values.emplace_back("c:budget-rhs-sans-2l2",
                         z * z * m * alpha * (m * r + Rational(1)) * (m * r + Rational(1)));
  return pe;
}

PrimedEval primed_eval_D(const BirationalRun& run, const ClassCoefficients& cc) {
  const Rational alpha = run.alpha;
  const Rational r(run.r);
  const Rational K3 = run.kx3 - alpha / r;
  const Rational e = run.flop_e;
  const Rational& z = cc.z;
  const Rational m = cc.u / cc.z;

  Rational c1, c2, a2, onshell;
  for (const FlipDatum& f : run.flips) {
    Rational w = m * f.a - Rational(1);
    c1 += f.d * w;
    c2 += f.d * w * w;
    a2 += f.d * f.a * w * w;
    onshell += f.d * m * f.a * w;
  }

  PrimedEval pe;
  pe.values.emplace_back("d:kl2", z * z * (K3 - m * alpha * (Rational(2) + m * r) - c2));
  pe.values.emplace_back(
      "d:el2",
      z * z * (alpha * (m * r + Rational(1)) * (m * r + Rational(1)) - a2 - m * m * e));
  pe.values.emplace_back("d:degf", z * (K3 - m * alpha + c1));
  // on-shell form of deg F, valid when d:kl2 vanishes
  pe.values.emplace_back("d:degf-onshell",
                         z * (m * alpha * (Rational(1) + m * r) + onshell));
  return pe;
}

std::vector<std::pair<std::string, Rational>> check_primed_identities(
    const BirationalRun& run, const ClassCoefficients& cc, CaseKind kind,
    const PointContractionData* data, std::optional<ConicBase> base, bool on_shell) {
  (void)base;  // the conic identities do not depend on the base surface
  std::vector<std::pair<std::string, Rational>> diffs;
  NumericalProfile p = run_profile(run);
  auto push = [&](const std::string& name, const Rational& primed, const Rational& direct) {
    diffs.emplace_back(name, primed - direct);
  };
  auto value_of = [](const PrimedEval& pe, const std::string& name) {
    for (const auto& v : pe.values)
      if (v.first == name) return v.second;
    throw std::logic_error("missing primed value " + name);
  };

  switch (kind) {
    case CaseKind::E1: {
      PrimedEval pe = primed_eval_E1(run, cc);
      CaseOutcome d = eval_case_E1(p, cc);
      push("e1:kx3'", value_of(pe, "e1:kx3'"), *d.kx_prime_3);
      push("e1:excess", value_of(pe, "e1:excess"), d.residuals[0].second);
      push("e1:lc", value_of(pe, "e1:lc"), *d.l_C);
      if (on_shell)
        push("e1:budget", value_of(pe, "e1:budget-lhs"), value_of(pe, "e1:budget-rhs"));
      break;
    }
    case CaseKind::Point: {
      if (!data) throw std::invalid_argument("check_primed_identities: point data required");
      PrimedEval pe = primed_eval_point(run, cc, *data);
      ClassCoeff eprime{cc.z, -cc.u};
      push("pt:cube", value_of(pe, "pt:cube"), triple(p, eprime, eprime, eprime));
      push("pt:ke2", value_of(pe, "pt:ke2"), triple(p, kK, eprime, eprime));
      push("pt:k2e", value_of(pe, "pt:k2e"), triple(p, kK, kK, eprime));
      if (on_shell) {
        push("pt:budget", value_of(pe, "pt:budget-lhs"), value_of(pe, "pt:budget-rhs"));
        push("pt:grade", value_of(pe, "pt:grade-lhs"), value_of(pe, "pt:grade-rhs"));
      }
      break;
    }
    case CaseKind::C: {
      PrimedEval pe = primed_eval_C(run, cc);
      ClassCoeff L{cc.z, -cc.u};
      push("c:l3", value_of(pe, "c:l3"), triple(p, L, L, L));
      Rational two_l2 = triple(p, kK, L, L);
      push("c:kl2", value_of(pe, "c:kl2"), two_l2);
      push("c:k2l", value_of(pe, "c:k2l"), triple(p, kK, kK, L));
      if (on_shell)
        push("c:budget", value_of(pe, "c:budget-lhs"),
             value_of(pe, "c:budget-rhs-sans-2l2") - two_l2);
      break;
    }
    case CaseKind::D: {
      PrimedEval pe = primed_eval_D(run, cc);
      ClassCoeff L{cc.z, -cc.u};
      ClassCoeff Et{Rational(0), Rational(1)};
      push("d:kl2", value_of(pe, "d:kl2"), triple(p, kK, L, L));
      push("d:el2", value_of(pe, "d:el2"), triple(p, Et, L, L));
      push("d:degf", value_of(pe, "d:degf"), triple(p, kK, kK, L));
      if (on_shell)
        push("d:degf-onshell", value_of(pe, "d:degf-onshell"), triple(p, kK, kK, L));
      break;
    }
    case CaseKind::Crepant: {
      // No primed system: the support condition z(-K_Y)^3 = u alpha is checked
      // against the profile directly.
      Rational K3 = run.kx3 - run.alpha / Rational(run.r);
      push("crep:support", cc.z * K3 - cc.u * run.alpha, cc.z * p.d3 - cc.u * p.d2e);
      break;
    }
  }
  return diffs;
}

// ---------------------------------------------------------------------------
// Fano catalog
// ---------------------------------------------------------------------------

const std::vector<FanoCatalogEntry>& load_fano_catalog() {
  static const std::vector<FanoCatalogEntry> catalog = [] {
    std::vector<FanoCatalogEntry> c;
    auto add = [&](std::string name, Rational kx3, Rational f, int gi, int aw) {
      c.push_back({std::move(name), kx3, f, gi, aw});
    };
    add("P3", Rational(64), Rational(4), 1, 0);
    add("Q3", Rational(54), Rational(3), 1, 0);
    for (int i = 1; i <= 5; ++i) add("B" + std::to_string(i), Rational(8 * i), Rational(2), 1, 0);
    for (int i = 1; i <= 11; ++i) {
      if (i == 10) continue;  // no V20
      add("V" + std::to_string(2 * i), Rational(2 * i), Rational(1), 1, 0);
    }
    add("[2]", Rational(27), half(3), 2, 2);
    add("[3]", half(81), half(3), 2, 1);
    add("[5]", half(125), half(5), 2, 1);
    return c;
  }();
  return catalog;
}

const FanoCatalogEntry* find_fano(const std::string& name) {
  for (const FanoCatalogEntry& e : load_fano_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<const FanoCatalogEntry*> admissible_E1_targets(const Rational& z) {
  std::vector<const FanoCatalogEntry*> out;
  for (const FanoCatalogEntry& e : load_fano_catalog()) {
    // F(X') = a (z+1)/z for a >= 1; the pair (z=1, F=4) is excluded.
    Rational a = e.fano_index * z / (z + Rational(1));
    if (!(a.is_integer() && a.sign() > 0)) continue;
    if (z == Rational(1) && e.fano_index == Rational(4)) continue;
    out.push_back(&e);
  }
  return out;
}

std::vector<const FanoCatalogEntry*> index_one_targets() {
  std::vector<const FanoCatalogEntry*> out;
  for (const FanoCatalogEntry& e : load_fano_catalog())
    if (e.fano_index == Rational(1) && e.gorenstein_index == 1) out.push_back(&e);
  return out;
}

}  // namespace qfano
