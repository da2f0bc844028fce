#include "qfano/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "qfano/riemann_roch.hpp"

namespace qfano {

namespace {

const ClassCoeff kK{Rational(1), Rational(0)};

// -------------------------------------------------------------------------
// Flip-list generation.  Ratios are even integers (E_i Cartier and
// -K.l = 1/2 on a flipping curve force a_i in 2Z), strictly decreasing along
// the run; each flip carries an axial weight aw_i >= 1 with degree drop
// d_i = aw_i * d_step.  Lists are capped by max_flips and sum aw_i <= n_max.
// -------------------------------------------------------------------------
struct FlipList {
  std::vector<FlipDatum> flips;
  int n = 0;          // sum of axial weights
  int min_a = 0;      // 0 for the empty list
  Rational s0, s1, s2, s3;  // moments sum d_i a_i^j
};

std::vector<FlipList> generate_flip_lists(const SearchBounds& b) {
  std::vector<FlipList> out;
  FlipList empty;
  out.push_back(empty);

  std::vector<int> ratios;  // descending
  for (int a = (b.a_max / 2) * 2; a >= 2; a -= 2) ratios.push_back(a);

  std::vector<FlipDatum> cur;
  auto rec = [&](auto&& self, std::size_t start, int aw_used) -> void {
    for (std::size_t i = start; i < ratios.size(); ++i) {
      for (int aw = 1; aw_used + aw <= b.n_max; ++aw) {
        FlipDatum f;
        f.a = Rational(ratios[i]);
        f.d = Rational(aw) * b.d_step;
        f.aw = aw;
        cur.push_back(f);
        FlipList fl;
        fl.flips = cur;
        fl.n = aw_used + aw;
        fl.min_a = ratios[i];  // ratios descend, so the last pushed is minimal
        for (const FlipDatum& g : cur) {
          fl.s0 += g.d;
          fl.s1 += g.d * g.a;
          fl.s2 += g.d * g.a * g.a;
          fl.s3 += g.d * g.a * g.a * g.a;
        }
        out.push_back(std::move(fl));
        if (static_cast<int>(cur.size()) < b.max_flips) self(self, i + 1, aw_used + aw);
        cur.pop_back();
      }
    }
  };
  if (b.max_flips > 0) rec(rec, 0, 0);
  return out;
}

// -------------------------------------------------------------------------
// Shared finishing rules: given a fully solved candidate, derive (N, h),
// name the target and either emit the row or record its removal.
// -------------------------------------------------------------------------
struct Sink {
  std::vector<SolutionRow>* rows;
  std::vector<Removal>* removed;  // may be null (oracle)

  void emit(SolutionRow row) const { rows->push_back(std::move(row)); }
  void drop(SolutionRow row, const std::string& rule, const std::string& reason) const {
    if (removed) removed->push_back({std::move(row), rule, reason});
  }
};

int family_rank(const std::string& tag) {
  if (tag == "E1") return 0;
  if (tag == "E1-zu1") return 1;
  if (tag == "C-P2" || tag == "C-F20") return 3;
  if (tag == "D") return 4;
  if (tag == "Crepant") return 5;
  return 2;  // point types
}

// h = h0(-K) must be an integer >= h_min and N <= 15 must respect the
// -K.c2 positivity bound; N >= n+1 keeps aw(Y') >= 0.
bool finish_h_N(const Scenario& sc, const Rational& kx3, int n, int N, int* h_out) {
  if (N < n + 1 || !aw_bound_ok(N)) return false;
  Rational h = h0_antik(kx3, N);
  if (!h.is_integer() || h < Rational(sc.h_min)) return false;
  *h_out = static_cast<int>(h.as_integer());
  return true;
}

// All N in [n+1, 15] compatible with an integer h >= h_min.
std::vector<int> candidate_Ns(const Scenario& sc, const Rational& kx3, int n) {
  std::vector<int> out;
  for (int N = n + 1; N <= 15; ++N) {
    int h;
    if (finish_h_N(sc, kx3, n, N, &h)) out.push_back(N);
  }
  return out;
}

bool integer_e_in_range(const Scenario& sc, const Rational& e, int* e_out) {
  // e lies in (1/s) Z>=0; with s = 1 it is a non-negative integer.
  Rational scaled = e * Rational(sc.cartier_index_s);
  if (!scaled.is_integer() || e.sign() < 0 || e > Rational(sc.bounds.e_max)) return false;
  if (!e.is_integer()) return false;  // rows carry e as an integer
  *e_out = static_cast<int>(e.as_integer());
  return true;
}

BirationalRun make_run(const Scenario& sc, const Rational& kx3, int e, const FlipList& fl) {
  BirationalRun run;
  run.kx3 = kx3;
  run.r = sc.r;
  run.alpha = sc.alpha;
  run.flop_e = Rational(e);
  run.flips = fl.flips;
  return run;
}

SolutionRow base_row(const std::string& tag, const Rational& kx3, int e,
                     const FlipList& fl, const ClassCoefficients& cc, CaseOutcome outcome) {
  SolutionRow row;
  row.case_tag = tag;
  row.kx3 = kx3;
  row.e = e;
  row.n = fl.n;
  row.flips = fl.flips;
  row.z = cc.z;
  row.u = cc.u;
  row.k = cc.k;
  row.derived = std::move(outcome);
  return row;
}

void run_cross_check(const Scenario& sc, const BirationalRun& run, const ClassCoefficients& cc,
                     CaseKind kind, const PointContractionData* data, std::optional<ConicBase> base,
                     bool on_shell) {
  if (!sc.cross_check) return;
  auto diffs = check_primed_identities(run, cc, kind, data, base, on_shell);
  for (const auto& d : diffs)
    if (!d.second.is_zero())
      throw std::logic_error("closed form disagrees with trilinear route: " + d.first + " by " +
                             d.second.str());
}

std::string index2_descriptor(const Rational& kx3p, int index) {
  return "(-K')^3=" + kx3p.str() + ", I(X')=" + std::to_string(index);
}

// -------------------------------------------------------------------------
// Per-case finishers shared by the pruned search and the oracle.  They apply
// the target naming, the N accounting and the declared geometric rules; the
// two searches differ only in how they generate and solve candidates.
// -------------------------------------------------------------------------

void finish_E1(const Scenario& sc, const Sink& sink, const Rational& kx3, int e,
               const FlipList& fl, const ClassCoefficients& cc, const FanoCatalogEntry& target,
               const CaseOutcome& outcome) {
  bool zu1 = cc.z == Rational(1) && cc.u == Rational(1);
  SolutionRow row = base_row(zu1 ? "E1-zu1" : "E1", kx3, e, fl, cc, outcome);
  row.x_prime = target.name;
  if (zu1) {
    // h^0(-K_X) = 4 in this family, which fixes N = 2(-K_X)^3 - 4.
    Rational N = Rational(2) * kx3 - Rational(4);
    if (!N.is_integer()) return;
    int Ni = static_cast<int>(N.as_integer());
    int h;
    if (!finish_h_N(sc, kx3, fl.n, Ni, &h)) return;
    row.N = Ni;
    row.h = h;
    row.flags = {"branch:e1-z=u=1", "h-cap:4"};
  } else {
    // E' carries no index-2 point, so aw(Y') = aw(X') and N = n + 1 + aw(X').
    int Ni = fl.n + 1 + target.axial_weight;
    int h;
    if (!finish_h_N(sc, kx3, fl.n, Ni, &h)) return;
    row.N = Ni;
    row.h = h;
    row.flags = {"branch:e1-u=z+1", "aw:N-n=" + std::to_string(1 + target.axial_weight)};
  }
  sink.emit(std::move(row));
}

void finish_point(const Scenario& sc, const Sink& sink, const Rational& kx3, int e,
                  const FlipList& fl, const ClassCoefficients& cc,
                  const PointContractionData& data, const CaseOutcome& outcome) {
  // Name the target.  Gorenstein targets (r' = 1) must live in the catalog
  // with Fano index 1; index-2 and index-3 targets are kept as descriptors.
  std::string x_prime;
  if (data.target_index == 1) {
    const FanoCatalogEntry* hit = nullptr;
    for (const FanoCatalogEntry* t : index_one_targets())
      if (t->kx3 == *outcome.kx_prime_3) hit = t;
    if (!hit) return;
    x_prime = hit->name;
  } else {
    x_prime = index2_descriptor(*outcome.kx_prime_3, data.target_index);
  }
  for (int N : candidate_Ns(sc, kx3, fl.n)) {
    int h;
    if (!finish_h_N(sc, kx3, fl.n, N, &h)) continue;
    SolutionRow row = base_row(data.kind, kx3, e, fl, cc, outcome);
    row.N = N;
    row.h = h;
    row.x_prime = x_prime;
    row.flags = {"branch:point"};
    if (data.kind == "E12") {
      sink.drop(std::move(row), "point-index-3",
                "an index-3 target point is incompatible with a Gorenstein-index-2 ambient");
      continue;
    }
    sink.emit(std::move(row));
  }
}

void finish_C(const Scenario& sc, const Sink& sink, const Rational& kx3, int e,
              const FlipList& fl, const ClassCoefficients& cc, ConicBase base,
              const CaseOutcome& outcome) {
  // aw(Y') accounting: over P^2 every half-fiber is excluded, N - n = 1;
  // over F_{2,0} the vertex fiber carries weight 2 when z = 2, N - n = 3,
  // while the z = 1 branch keeps N - n = 1 and is then excluded below.
  int nn;
  if (base == ConicBase::P2)
    nn = 1;
  else
    nn = cc.z == Rational(1) ? 1 : 3;
  int N = fl.n + nn;
  int h;
  if (!finish_h_N(sc, kx3, fl.n, N, &h)) return;
  SolutionRow row = base_row(base == ConicBase::P2 ? "C-P2" : "C-F20", kx3, e, fl, cc, outcome);
  row.N = N;
  row.h = h;
  row.x_prime = base == ConicBase::P2 ? "P2" : "F2,0";
  row.flags = {std::string("branch:conic-") + (base == ConicBase::P2 ? "P2" : "F20"),
               "aw:N-n=" + std::to_string(nn)};
  if (base == ConicBase::F20 && cc.z == Rational(1)) {
    sink.drop(std::move(row), "conic-f20-z1",
              "N-n=1 would make Y' Gorenstein, but a conic bundle over the quadric cone "
              "always has index-2 points over the vertex");
    return;
  }
  sink.emit(std::move(row));
}

void finish_D(const Scenario& sc, const Sink& sink, const Rational& kx3, int e,
              const FlipList& fl, const ClassCoefficients& cc, const NumericalProfile& yprime,
              const CaseOutcome& outcome) {
  // N - n is 1 or 5 (integrality of h plus h >= 4).  Gorenstein fibers
  // (N - n = 1) force z = 1 by primitivity of L and restrict deg F; fibers
  // with an index-2 point (N - n = 5) force z = 2.
  for (int nn : {1, 5}) {
    int N = fl.n + nn;
    int h;
    if (!finish_h_N(sc, kx3, fl.n, N, &h)) continue;
    SolutionRow row = base_row("D", kx3, e, fl, cc, outcome);
    row.N = N;
    row.h = h;
    row.x_prime = "P1";
    row.flags = {"branch:dp", "aw:N-n=" + std::to_string(nn)};
    Rational degf = *outcome.deg_F;
    if (nn == 1) {
      if (cc.z != Rational(1)) continue;
      if (degf == Rational(7)) {
        sink.drop(std::move(row), "dp-fiber-deg7",
                  "a Gorenstein del Pezzo fiber of degree 7 does not occur");
        continue;
      }
      if (degf == Rational(8) && !(yprime.d3 / Rational(8)).is_integer()) {
        sink.drop(std::move(row), "dp-quadric-bundle",
                  "degree-8 Gorenstein fibers make Y' a quadric bundle, whose (-K)^3 is a "
                  "multiple of 8");
        continue;
      }
      if (degf == Rational(9) && yprime.d3 != Rational(54)) {
        sink.drop(std::move(row), "dp-plane-bundle",
                  "degree-9 Gorenstein fibers make Y' a P^2 bundle over P^1 with (-K)^3 = 54");
        continue;
      }
    } else {
      if (cc.z != Rational(2)) continue;
    }
    sink.emit(std::move(row));
  }
}

void finish_crepant(const Scenario& sc, const Sink& sink, const Rational& kx3,
                    const ClassCoefficients& cc, const NumericalProfile& y,
                    const CaseOutcome& outcome) {
  FlipList none;
  for (int N : candidate_Ns(sc, kx3, 0)) {
    int h;
    if (!finish_h_N(sc, kx3, 0, N, &h)) continue;
    SolutionRow row = base_row("Crepant", kx3, 0, none, cc, outcome);
    row.N = N;
    row.h = h;
    row.x_prime = index2_descriptor(y.d3, 1);
    row.flags = {"branch:crepant"};
    sink.emit(std::move(row));
  }
}

// -------------------------------------------------------------------------
// Claim-pruned search.  Candidates are solved through the closed forms in
// the run data; each survivor is then re-evaluated with the trilinear route
// before finishing.
// -------------------------------------------------------------------------

class PrunedSearch {
 public:
  PrunedSearch(const Scenario& sc, const Sink& sink)
      : sc_(sc), sink_(sink), lists_(generate_flip_lists(sc.bounds)) {}

  void run() {
    search_E1();
    search_points();
    search_C();
    search_D();
    search_crepant();
  }

 private:
  const Scenario& sc_;
  Sink sink_;
  std::vector<FlipList> lists_;

  Rational alpha() const { return sc_.alpha; }
  Rational r() const { return Rational(sc_.r); }

  BirationalRun run_for_crepant(const Rational& kx3) const {
    BirationalRun run;
    run.kx3 = kx3;
    run.r = sc_.r;
    run.alpha = sc_.alpha;
    run.flop_e = Rational(0);
    return run;
  }

  // z grid: positive multiples of 1/q up to z_max.
  std::vector<Rational> z_grid() const {
    std::vector<Rational> out;
    for (int i = 1; i <= sc_.bounds.z_max * sc_.q; ++i) out.push_back(Rational(i, sc_.q));
    return out;
  }

  bool solve_and_finish_E1(const Rational& z, const Rational& u, const Rational& k,
                           const FanoCatalogEntry& target, const FlipList& fl) {
    // sums over flips in terms of the moments
    Rational ssq = fl.s2 - Rational(2) * k * fl.s1 + k * k * fl.s0;
    Rational scub = fl.s3 - Rational(3) * k * fl.s2 + Rational(3) * k * k * fl.s1 - k * k * k * fl.s0;
    Rational K3 = (target.kx3 / (u * u) + (Rational(2) * k + r()) * alpha() + ssq) / (k * k);
    if (!(K3 > Rational(0))) return false;
    Rational uk1 = u * k - Rational(1);
    Rational coef = u * r() * r() + (Rational(3) * u * k - Rational(1)) * r() +
                    k * (Rational(3) * u * k - Rational(2));
    Rational e_rat = (coef * alpha() - uk1 * k * k * K3 - (u * scub + ssq)) / u;
    int e;
    if (!integer_e_in_range(sc_, e_rat, &e)) return false;

    Rational kx3 = K3 + alpha() / r();
    BirationalRun run = make_run(sc_, kx3, e, fl);
    NumericalProfile p = run_profile(run);
    if (!(p.d3 > Rational(0))) return false;
    ClassCoefficients cc{z, u, k, Rational(0)};
    CaseOutcome outcome = eval_case_E1(p, cc);
    if (!outcome.valid || *outcome.kx_prime_3 != target.kx3) return false;
    run_cross_check(sc_, run, cc, CaseKind::E1, nullptr, std::nullopt, true);
    finish_E1(sc_, sink_, kx3, e, fl, cc, target, outcome);
    return true;
  }

  void search_E1() {
    // u = z+1 (k = 1) against the catalog targets admissible for z.
    Rational k_cap(sc_.bounds.k_max);
    for (const Rational& z : z_grid()) {
      Rational u = z + Rational(1);
      if (u > Rational(sc_.bounds.u_max)) continue;
      Rational k = (z + Rational(1)) / u;  // == 1
      if (!k.is_integer() || k > k_cap) continue;
      for (const FanoCatalogEntry* target : admissible_E1_targets(z)) {
        for (const FlipList& fl : lists_) {
          if (!fl.flips.empty() && Rational(fl.min_a) <= k) continue;  // k < a_i
          solve_and_finish_E1(z, u, k, *target, fl);
        }
      }
    }
    // z = u = 1 (k = 2); the target is Gorenstein of Fano index 1.
    Rational one(1), two(2);
    if (two > k_cap) return;
    for (const FanoCatalogEntry* target : index_one_targets()) {
      for (const FlipList& fl : lists_) {
        if (!fl.flips.empty() && Rational(fl.min_a) <= two) continue;  // k < a_i
        solve_and_finish_E1(one, one, two, *target, fl);
      }
    }
  }

  void search_points() {
    for (const PointContractionData& data : load_point_contraction_table()) {
      Rational d(data.disc_num), rp(data.target_index);
      for (const Rational& z : z_grid()) {
        for (int j = 1; j <= 2 * sc_.bounds.u_max; ++j) {
          Rational u(j, 2);
          if (z > u) continue;  // z <= u
          Rational k = (z * d + rp) / u;
          if (!k.is_integer() || k.sign() <= 0 || k > Rational(sc_.bounds.k_max)) continue;
          for (const FlipList& fl : lists_) {
            if (!fl.flips.empty() && d * Rational(fl.min_a) <= k) continue;  // k < d a_i
            // T_j = sum d_i (u a_i - z)^j from the moments
            Rational t1 = u * fl.s1 - z * fl.s0;
            Rational t2 = u * u * fl.s2 - Rational(2) * u * z * fl.s1 + z * z * fl.s0;
            Rational t3 = u * u * u * fl.s3 - Rational(3) * u * u * z * fl.s2 +
                          Rational(3) * u * z * z * fl.s1 - z * z * z * fl.s0;
            Rational K3 = (data.k2_ep + u * alpha() - t1) / z;
            if (!(K3 > Rational(0))) continue;
            if (z * z * K3 - u * alpha() * (Rational(2) * z + u * r()) - t2 != data.k_ep2)
              continue;
            Rational e_rat = (data.ep3 - z * z * z * K3 +
                              u * alpha() *
                                  (u * u * r() * r() + Rational(3) * z * u * r() +
                                   Rational(3) * z * z) -
                              t3) /
                             (u * u * u);
            int e;
            if (!integer_e_in_range(sc_, e_rat, &e)) continue;
            Rational kx3 = K3 + alpha() / r();
            BirationalRun run = make_run(sc_, kx3, e, fl);
            NumericalProfile p = run_profile(run);
            if (!(p.d3 > Rational(0))) continue;
            ClassCoefficients cc{z, u, k, Rational(0)};
            CaseOutcome outcome = eval_case_point(p, cc, data);
            if (!outcome.valid) continue;
            run_cross_check(sc_, run, cc, CaseKind::Point, &data, std::nullopt, true);
            finish_point(sc_, sink_, kx3, e, fl, cc, data, outcome);
          }
        }
      }
    }
  }

  void search_C() {
    for (ConicBase base : {ConicBase::P2, ConicBase::F20}) {
      Rational t2l2 = base == ConicBase::P2 ? Rational(2) : Rational(4);
      for (Rational m : {Rational(1), Rational(2)}) {
        for (const Rational& z : z_grid()) {
          Rational u = m * z;
          if (u > Rational(sc_.bounds.u_max)) continue;
          for (const FlipList& fl : lists_) {
            // m a_i > 1 holds for every even ratio when m >= 1
            Rational c2 = m * m * fl.s2 - Rational(2) * m * fl.s1 + fl.s0;
            Rational c3 = m * m * m * fl.s3 - Rational(3) * m * m * fl.s2 +
                          Rational(3) * m * fl.s1 - fl.s0;
            Rational K3 = t2l2 / (z * z) + m * alpha() * (Rational(2) + m * r()) + c2;
            Rational e_rat = (m * alpha() * (m * m * r() * r() + Rational(3) * m * r() +
                                             Rational(3)) -
                              K3 - c3) /
                             (m * m * m);
            int e;
            if (!integer_e_in_range(sc_, e_rat, &e)) continue;
            if (!(K3 > Rational(0))) continue;
            Rational kx3 = K3 + alpha() / r();
            BirationalRun run = make_run(sc_, kx3, e, fl);
            NumericalProfile p = run_profile(run);
            if (!(p.d3 > Rational(0))) continue;
            ClassCoefficients cc{z, u, Rational(0), m};
            CaseOutcome outcome = eval_case_C(p, cc, base);
            if (!outcome.valid) continue;
            run_cross_check(sc_, run, cc, CaseKind::C, nullptr, base, true);
            finish_C(sc_, sink_, kx3, e, fl, cc, base, outcome);
          }
        }
      }
    }
  }

  void search_D() {
    for (Rational m : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
      for (const Rational& z : z_grid()) {
        Rational u = m * z;
        if (u > Rational(sc_.bounds.u_max)) continue;
        if (!(u * Rational(2)).is_integer()) continue;  // z + ru integral
        for (const FlipList& fl : lists_) {
          Rational c2 = m * m * fl.s2 - Rational(2) * m * fl.s1 + fl.s0;
          Rational a2 = m * m * fl.s3 - Rational(2) * m * fl.s2 + fl.s1;
          Rational K3 = m * alpha() * (Rational(2) + m * r()) + c2;
          Rational e_rat = (alpha() * (m * r() + Rational(1)) * (m * r() + Rational(1)) - a2) /
                           (m * m);
          int e;
          if (!integer_e_in_range(sc_, e_rat, &e)) continue;
          Rational kx3 = K3 + alpha() / r();
          BirationalRun run = make_run(sc_, kx3, e, fl);
          NumericalProfile p = run_profile(run);
          if (!(p.d3 > Rational(0))) continue;
          ClassCoefficients cc{z, u, Rational(0), m};
          CaseOutcome outcome = eval_case_D(p, cc);
          if (!outcome.valid) continue;
          run_cross_check(sc_, run, cc, CaseKind::D, nullptr, std::nullopt, true);
          finish_D(sc_, sink_, kx3, e, fl, cc, p, outcome);
        }
      }
    }
  }

  void search_crepant() {
    // Y = Y': no flop, no flips.  z (-K_Y)^3 = u alpha and u(E.l) = 2.
    for (const Rational& z : z_grid()) {
      for (Rational u : {Rational(1, 2), Rational(1), Rational(2)}) {
        if (u > Rational(sc_.bounds.u_max) || z > u) continue;
        Rational K3 = u * alpha() / z;
        Rational kx3 = K3 + alpha() / r();
        NumericalProfile p = blowup_profile(kx3, sc_.r, alpha());
        ClassCoefficients cc{z, u, Rational(0), Rational(0)};
        CaseOutcome outcome = eval_case_crepant(p, cc);
        if (!outcome.valid) continue;
        run_cross_check(sc_, run_for_crepant(kx3), cc, CaseKind::Crepant, nullptr, std::nullopt,
                        true);
        finish_crepant(sc_, sink_, kx3, cc, p, outcome);
      }
    }
  }
};

}  // namespace

// -------------------------------------------------------------------------
// Row ordering, comparison, tables
// -------------------------------------------------------------------------

namespace {

int cmp(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }
int cmp(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }
int cmp(const std::string& a, const std::string& b) { return a < b ? -1 : (a > b ? 1 : 0); }
int cmp_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() ? 1 : -1;
  if (!a) return 0;
  return cmp(*a, *b);
}

// Total order over all semantic fields.
int compare_rows(const SolutionRow& a, const SolutionRow& b) {
  if (int c = cmp(family_rank(a.case_tag), family_rank(b.case_tag))) return c;
  if (int c = cmp(a.h, b.h)) return c;
  if (int c = cmp(a.kx3, b.kx3)) return c;
  if (int c = cmp(a.N, b.N)) return c;
  if (int c = cmp(b.e, a.e)) return c;  // e descending, matching the table layout
  if (int c = cmp(a.z, b.z)) return c;
  if (int c = cmp(a.case_tag, b.case_tag)) return c;
  if (int c = cmp(a.x_prime, b.x_prime)) return c;
  if (int c = cmp(a.n, b.n)) return c;
  if (int c = cmp(a.u, b.u)) return c;
  if (int c = cmp(a.k, b.k)) return c;
  if (int c = cmp(static_cast<int>(a.flips.size()), static_cast<int>(b.flips.size()))) return c;
  for (std::size_t i = 0; i < a.flips.size(); ++i) {
    if (int c = cmp(a.flips[i].a, b.flips[i].a)) return c;
    if (int c = cmp(a.flips[i].d, b.flips[i].d)) return c;
    if (int c = cmp(a.flips[i].aw, b.flips[i].aw)) return c;
  }
  if (int c = cmp_opt(a.derived.kx_prime_3, b.derived.kx_prime_3)) return c;
  if (int c = cmp_opt(a.derived.l_C, b.derived.l_C)) return c;
  if (int c = cmp_opt(a.derived.genus_slack, b.derived.genus_slack)) return c;
  if (int c = cmp_opt(a.derived.two_l2, b.derived.two_l2)) return c;
  if (int c = cmp_opt(a.derived.delta_l, b.derived.delta_l)) return c;
  if (int c = cmp_opt(a.derived.deg_F, b.derived.deg_F)) return c;
  return 0;
}

int point_type_order(const std::string& tag) {
  static const char* order[] = {"E2", "E3/E4", "E5", "E6", "E7", "E8", "E9", "E10", "E11", "E12"};
  for (int i = 0; i < 10; ++i)
    if (tag == order[i]) return i;
  return 99;
}

// Merge point-type rows that agree on every field except the type tag; the
// underlying table rows are numerically identical (e.g. E5 and E11), so the
// equations cannot separate them.
void merge_equal_point_rows(std::vector<SolutionRow>& rows) {
  std::vector<SolutionRow> out;
  for (SolutionRow& row : rows) {
    bool merged = false;
    if (family_rank(row.case_tag) == 2) {
      for (SolutionRow& prev : out) {
        if (family_rank(prev.case_tag) != 2 || prev.case_tag == row.case_tag) continue;
        SolutionRow probe = row;
        probe.case_tag = prev.case_tag;
        if (compare_rows(probe, prev) == 0) {
          if (point_type_order(row.case_tag) < point_type_order(prev.case_tag))
            prev.case_tag = row.case_tag + "/" + prev.case_tag;
          else
            prev.case_tag = prev.case_tag + "/" + row.case_tag;
          merged = true;
          break;
        }
      }
    }
    if (!merged) out.push_back(std::move(row));
  }
  rows = std::move(out);
}

}  // namespace

bool SolutionRow::same_solution(const SolutionRow& o) const { return compare_rows(*this, o) == 0; }

void canonical_sort(std::vector<SolutionRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SolutionRow& a, const SolutionRow& b) { return compare_rows(a, b) < 0; });
}

int table_of(const SolutionRow& row) {
  switch (family_rank(row.case_tag)) {
    case 0: return 1;
    case 1: return 2;
    case 2: return 3;
    case 3: return 4;
    case 4: return 5;
    default: return 0;
  }
}

bool same_row_set(const std::vector<SolutionRow>& a, const std::vector<SolutionRow>& b) {
  if (a.size() != b.size()) return false;
  std::vector<SolutionRow> sa = a, sb = b;
  canonical_sort(sa);
  canonical_sort(sb);
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (compare_rows(sa[i], sb[i]) != 0) return false;
  return true;
}

EnumerationResult enumerate_solutions(const Scenario& sc) {
  EnumerationResult result;
  Sink sink{&result.rows, &result.removed};
  PrunedSearch search(sc, sink);
  search.run();
  merge_equal_point_rows(result.rows);
  canonical_sort(result.rows);
  return result;
}

FilterResult geometric_filters(const std::vector<SolutionRow>& rows) {
  FilterResult out;
  for (const SolutionRow& row : rows) {
    if (row.case_tag == "E1-zu1" && row.N == 7) {
      out.removed.push_back({row, "zu1-n7",
                             "declared exclusion: no variety realizes the N=7 row of the "
                             "z=u=1 family"});
      continue;
    }
    if (row.case_tag == "E1-zu1" && row.N == 8) {
      out.removed.push_back({row, "zu1-n8",
                             "declared exclusion: e=0 forces a second degenerate run, so the "
                             "N=8 row of the z=u=1 family is empty"});
      continue;
    }
    if (row.case_tag == "C-P2" && row.h == 6 && row.N == 8) {
      out.removed.push_back({row, "conic-h6-n8",
                             "declared exclusion: the h=6, N=8 conic bundle forces Fano "
                             "index 1, contradicting F(X)=1/2"});
      continue;
    }
    out.rows.push_back(row);
  }
  return out;
}

std::map<int, std::vector<SolutionRow>> regroup_by_h(const std::vector<SolutionRow>& rows) {
  std::map<int, std::vector<SolutionRow>> grouped;
  for (const SolutionRow& row : rows) grouped[row.h].push_back(row);
  for (auto& [h, group] : grouped) {
    std::sort(group.begin(), group.end(), [](const SolutionRow& a, const SolutionRow& b) {
      if (int c = cmp(a.kx3, b.kx3)) return c < 0;
      if (int c = cmp(family_rank(a.case_tag), family_rank(b.case_tag))) return c < 0;
      return compare_rows(a, b) < 0;
    });
  }
  return grouped;
}

std::vector<std::string> boundary_audit(const std::vector<SolutionRow>& rows, const Scenario& sc) {
  std::vector<std::string> hits;
  const SearchBounds& b = sc.bounds;
  auto note = [&](const SolutionRow& row, const std::string& what) {
    hits.push_back("row (" + row.case_tag + ", h=" + std::to_string(row.h) + ", (-K)^3=" +
                   row.kx3.str() + ", N=" + std::to_string(row.N) + ") touches " + what);
  };
  for (const SolutionRow& row : rows) {
    if (row.z == Rational(b.z_max)) note(row, "z_max");
    if (row.u == Rational(b.u_max)) note(row, "u_max");
    if (row.k == Rational(b.k_max)) note(row, "k_max");
    if (row.e == b.e_max) note(row, "e_max");
    if (row.n == b.n_max) note(row, "n_max");
    if (static_cast<int>(row.flips.size()) == b.max_flips) note(row, "max_flips");
    for (const FlipDatum& f : row.flips)
      if (f.a == Rational(b.a_max)) note(row, "a_max");
  }
  return hits;
}

// -------------------------------------------------------------------------
// Brute-force oracle: no claim is used while generating; every candidate in
// the box is solved through the trilinear route and the complete rule set is
// applied only at the end.
// -------------------------------------------------------------------------

namespace {

// value(kx3, e) of a trilinear form, exploiting that kx3 enters the profile
// only through d3 (coefficient: product of the -K coefficients) and e only
// through e3 (coefficient: minus the product of the E coefficients).
struct AffineForm {
  Rational v00;
  Rational ck;
  Rational ce;
  Rational at(const Rational& kx3, const Rational& e) const { return v00 + ck * kx3 + ce * e; }
};

AffineForm make_form(const NumericalProfile& p00, const ClassCoeff& c1, const ClassCoeff& c2,
                     const ClassCoeff& c3) {
  AffineForm f;
  f.v00 = triple(p00, c1, c2, c3);
  f.ck = c1.first * c2.first * c3.first;
  f.ce = -(c1.second * c2.second * c3.second);
  return f;
}

class OracleSearch {
 public:
  OracleSearch(const Scenario& sc, const Sink& sink)
      : sc_(sc), sink_(sink), lists_(generate_flip_lists(sc.bounds)) {
    for (const FlipList& fl : lists_) {
      BirationalRun run;
      run.kx3 = Rational(0);
      run.r = sc.r;
      run.alpha = sc.alpha;
      run.flop_e = Rational(0);
      run.flips = fl.flips;
      base_profiles_.push_back(run_profile(run));
    }
  }

  void run() {
    for (std::size_t i = 0; i < lists_.size(); ++i) {
      const FlipList& fl = lists_[i];
      const NumericalProfile& p00 = base_profiles_[i];
      for (const Rational& z : z_grid()) {
        for (int j = 1; j <= 2 * sc_.bounds.u_max; ++j) {
          Rational u(j, 2);
          try_E1(fl, p00, z, u);
          try_points(fl, p00, z, u);
          try_C(fl, p00, z, u);
          try_D(fl, p00, z, u);
          if (fl.flips.empty()) try_crepant(z, u);
        }
      }
    }
  }

 private:
  const Scenario& sc_;
  Sink sink_;
  std::vector<FlipList> lists_;
  std::vector<NumericalProfile> base_profiles_;

  std::vector<Rational> z_grid() const {
    std::vector<Rational> out;
    for (int i = 1; i <= sc_.bounds.z_max * sc_.q; ++i) out.push_back(Rational(i, sc_.q));
    return out;
  }

  // Claims applied only after a candidate solves the equations.
  bool claims_ok_common(const Rational& z, const Rational& u) const {
    if (z > u) return false;                                   // z <= u
    if (!(z * Rational(sc_.q)).is_integer()) return false;     // z in N/q
    if (!(z + Rational(sc_.r) * u).is_integer()) return false; // z + ru in N
    return true;
  }

  bool effectivity_ok(const FlipList& fl, const Rational& k, const Rational& d) const {
    for (const FlipDatum& f : fl.flips)
      if (!(d * f.a > k)) return false;  // k < d a_i
    return true;
  }

  NumericalProfile profile_at(const FlipList& fl, const Rational& kx3, int e) const {
    return run_profile(make_run(sc_, kx3, e, fl));
  }

  void try_E1(const FlipList& fl, const NumericalProfile& p00, const Rational& z,
              const Rational& u) {
    ClassCoeff eprime{z, -u};
    ClassCoeff kpe{Rational(1) + z, -u};
    AffineForm excess = make_form(p00, kpe, kpe, eprime);
    AffineForm kxp3 = make_form(p00, kpe, kpe, kK);
    for (int e = 0; e <= sc_.bounds.e_max; ++e) {
      Rational kx3 = -(excess.v00 + excess.ce * Rational(e)) / excess.ck;
      if (!kx3.is_half_integer()) continue;  // h integral needs 2 kx3 in Z
      Rational K3 = kx3 - sc_.alpha / Rational(sc_.r);
      if (!(K3 > Rational(0))) continue;
      Rational t = kxp3.at(kx3, Rational(e));

      // end checks
      if (!claims_ok_common(z, u)) continue;
      Rational k = (z + Rational(1)) / u;
      if (!k.is_integer() || k.sign() <= 0 || k > Rational(sc_.bounds.k_max)) continue;
      if (!effectivity_ok(fl, k, Rational(1))) continue;

      const FanoCatalogEntry* target = nullptr;
      if (u == z + Rational(1)) {
        for (const FanoCatalogEntry* cand : admissible_E1_targets(z))
          if (cand->kx3 == t) target = cand;
      } else if (z == Rational(1) && u == Rational(1)) {
        for (const FanoCatalogEntry* cand : index_one_targets())
          if (cand->kx3 == t) target = cand;
      }
      if (!target) continue;

      NumericalProfile p = profile_at(fl, kx3, e);
      if (!(p.d3 > Rational(0))) continue;
      ClassCoefficients cc{z, u, k, Rational(0)};
      CaseOutcome outcome = eval_case_E1(p, cc);
      if (!outcome.valid) continue;
      finish_E1(sc_, sink_, kx3, e, fl, cc, *target, outcome);
    }
  }

  void try_points(const FlipList& fl, const NumericalProfile& p00, const Rational& z,
                  const Rational& u) {
    ClassCoeff eprime{z, -u};
    AffineForm k2e = make_form(p00, kK, kK, eprime);
    AffineForm ke2 = make_form(p00, kK, eprime, eprime);
    AffineForm cube = make_form(p00, eprime, eprime, eprime);
    for (const PointContractionData& data : load_point_contraction_table()) {
      Rational kx3 = (data.k2_ep - k2e.v00) / k2e.ck;
      if (!kx3.is_half_integer()) continue;
      if (ke2.at(kx3, Rational(0)) != data.k_ep2) continue;  // ke2 is e-free
      Rational e_rat = (data.ep3 - cube.v00 - cube.ck * kx3) / cube.ce;
      int e;
      if (!integer_e_in_range(sc_, e_rat, &e)) continue;
      Rational K3 = kx3 - sc_.alpha / Rational(sc_.r);
      if (!(K3 > Rational(0))) continue;

      if (!claims_ok_common(z, u)) continue;
      Rational k = (z * Rational(data.disc_num) + Rational(data.target_index)) / u;
      if (!k.is_integer() || k.sign() <= 0 || k > Rational(sc_.bounds.k_max)) continue;
      if (!effectivity_ok(fl, k, Rational(data.disc_num))) continue;

      NumericalProfile p = profile_at(fl, kx3, e);
      if (!(p.d3 > Rational(0))) continue;
      ClassCoefficients cc{z, u, k, Rational(0)};
      CaseOutcome outcome = eval_case_point(p, cc, data);
      if (!outcome.valid) continue;
      finish_point(sc_, sink_, kx3, e, fl, cc, data, outcome);
    }
  }

  void try_C(const FlipList& fl, const NumericalProfile& p00, const Rational& z,
             const Rational& u) {
    ClassCoeff L{z, -u};
    AffineForm l3 = make_form(p00, L, L, L);
    AffineForm kl2 = make_form(p00, kK, L, L);
    for (int e = 0; e <= sc_.bounds.e_max; ++e) {
      Rational kx3 = -(l3.v00 + l3.ce * Rational(e)) / l3.ck;
      if (!kx3.is_half_integer()) continue;
      Rational t = kl2.at(kx3, Rational(e));  // e-free in fact
      ConicBase base;
      if (t == Rational(2))
        base = ConicBase::P2;
      else if (t == Rational(4))
        base = ConicBase::F20;
      else
        continue;
      Rational K3 = kx3 - sc_.alpha / Rational(sc_.r);
      if (!(K3 > Rational(0))) continue;

      if (!claims_ok_common(z, u)) continue;
      Rational m = u / z;
      if (!(m == Rational(1) || m == Rational(2))) continue;
      bool ratio_ok = true;
      for (const FlipDatum& f : fl.flips)
        if (!(m * f.a > Rational(1))) ratio_ok = false;  // m a_i > 1
      if (!ratio_ok) continue;

      NumericalProfile p = profile_at(fl, kx3, e);
      if (!(p.d3 > Rational(0))) continue;
      ClassCoefficients cc{z, u, Rational(0), m};
      CaseOutcome outcome = eval_case_C(p, cc, base);
      if (!outcome.valid) continue;
      finish_C(sc_, sink_, kx3, e, fl, cc, base, outcome);
    }
  }

  void try_D(const FlipList& fl, const NumericalProfile& p00, const Rational& z,
             const Rational& u) {
    ClassCoeff L{z, -u};
    ClassCoeff Et{Rational(0), Rational(1)};
    AffineForm el2 = make_form(p00, Et, L, L);  // ck == 0: solves e directly
    AffineForm kl2 = make_form(p00, kK, L, L);
    Rational e_rat = el2.v00 / -el2.ce;
    int e;
    if (!integer_e_in_range(sc_, e_rat, &e)) return;
    Rational kx3 = -kl2.v00 / kl2.ck;
    if (!kx3.is_half_integer()) return;
    Rational K3 = kx3 - sc_.alpha / Rational(sc_.r);
    if (!(K3 > Rational(0))) return;

    if (!claims_ok_common(z, u)) return;
    Rational m = u / z;
    if (!(m == Rational(1) || m == Rational(3, 2) || m == Rational(2) || m == Rational(3))) return;
    for (const FlipDatum& f : fl.flips)
      if (!(m * f.a > Rational(1))) return;

    NumericalProfile p = profile_at(fl, kx3, e);
    if (!(p.d3 > Rational(0))) return;
    ClassCoefficients cc{z, u, Rational(0), m};
    CaseOutcome outcome = eval_case_D(p, cc);
    if (!outcome.valid) return;
    finish_D(sc_, sink_, kx3, e, fl, cc, p, outcome);
  }

  void try_crepant(const Rational& z, const Rational& u) {
    if (!claims_ok_common(z, u)) return;
    Rational K3 = u * sc_.alpha / z;
    Rational kx3 = K3 + sc_.alpha / Rational(sc_.r);
    NumericalProfile p = blowup_profile(kx3, sc_.r, sc_.alpha);
    ClassCoefficients cc{z, u, Rational(0), Rational(0)};
    CaseOutcome outcome = eval_case_crepant(p, cc);
    if (!outcome.valid) return;
    finish_crepant(sc_, sink_, kx3, cc, p, outcome);
  }
};

}  // namespace

std::vector<SolutionRow> brute_force_oracle(const Scenario& sc) {
  std::vector<SolutionRow> rows;
  Sink sink{&rows, nullptr};
  OracleSearch search(sc, sink);
  search.run();
  merge_equal_point_rows(rows);
  canonical_sort(rows);
  return rows;
}

}  // namespace qfano
