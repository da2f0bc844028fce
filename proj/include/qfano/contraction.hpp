#ifndef QFANO_CONTRACTION_HPP
#define QFANO_CONTRACTION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfano/profile.hpp"

namespace qfano {

// ---------------------------------------------------------------------------
// Fixed numeric data of the divisor-to-point contraction types E2..E12.
// d/r' is the discrepancy of E' for K_X' (r' the index of the target point),
// and ep3 = (E')^3.  The other two intersection numbers follow:
//   (-K)^2 E' = (d/r')^2 ep3,   (-K)(E')^2 = -(d/r') ep3.
// E3 and E4 share identical numerics and are stored as one merged row.
// ---------------------------------------------------------------------------
struct PointContractionData {
  std::string kind;       // "E2", "E3/E4", "E5", ..., "E12"
  int disc_num = 1;       // d
  int target_index = 1;   // r'
  Rational ep3;           // (E')^3
  Rational k_ep2;         // (-K_{Y'})(E')^2
  Rational k2_ep;         // (-K_{Y'})^2 E'
};

const std::vector<PointContractionData>& load_point_contraction_table();

// Lookup by kind tag ("E3/E4" accepted as-is).  Returns nullptr if unknown.
const PointContractionData* find_point_contraction(const std::string& kind);

// ---------------------------------------------------------------------------
// Class coefficients of E' (birational cases) or L (fibration cases) in the
// basis {-K_{Y'}, E~}:  E' or L == z(-K_{Y'}) - u E~.
// k is the integrality witness (z+1 = uk, resp. zd + r' = uk); ratio_m is
// m = u/z in the fibration cases.  Unused members stay zero.
// ---------------------------------------------------------------------------
struct ClassCoefficients {
  Rational z;
  Rational u;
  Rational k;        // 0 when not applicable
  Rational ratio_m;  // 0 when not applicable
};

enum class ConicBase { P2, F20 };

// Result of evaluating one candidate second contraction against a Y' profile.
// `residuals` must all be zero for a valid outcome; `violations` lists the
// named rules a candidate breaks (empty iff valid).
struct CaseOutcome {
  bool valid = false;
  std::optional<Rational> kx_prime_3;
  std::optional<Rational> l_C;
  std::optional<Rational> genus_slack;  // (8 - (-K_{E'})^2)/2, a.k.a. 4g + m
  std::optional<Rational> ke_prime_2;   // (-K_{E'})^2
  std::optional<Rational> two_l2;       // 2 l^2
  std::optional<Rational> delta_l;      // discriminant degree
  std::optional<Rational> deg_F;        // (-K_F)^2
  std::vector<std::pair<std::string, Rational>> residuals;
  std::vector<std::string> violations;
};

// Divisor-to-curve contraction (type E1).
CaseOutcome eval_case_E1(const NumericalProfile& p, const ClassCoefficients& cc);

// Divisor-to-point contraction of the given fixed type.
CaseOutcome eval_case_point(const NumericalProfile& p, const ClassCoefficients& cc,
                            const PointContractionData& data);

// Conic bundle over P^2 or over the quadric cone F_{2,0}.
CaseOutcome eval_case_C(const NumericalProfile& p, const ClassCoefficients& cc, ConicBase base);

// Del Pezzo fibration over P^1.
CaseOutcome eval_case_D(const NumericalProfile& p, const ClassCoefficients& cc);

// Crepant divisorial contraction (no flop, no flips: Y == Y').
CaseOutcome eval_case_crepant(const NumericalProfile& p, const ClassCoefficients& cc);

// ---------------------------------------------------------------------------
// Closed forms of the case equations written directly in the run data
// (kx3, alpha, r, e, flips, z, u, k, m), bypassing run_profile/triple.
// Each function returns named values; check_primed_identities subtracts the
// matching direct computation and all differences must vanish.
// ---------------------------------------------------------------------------
enum class CaseKind { E1, Point, C, D, Crepant };

struct PrimedEval {
  std::vector<std::pair<std::string, Rational>> values;
};

PrimedEval primed_eval_E1(const BirationalRun& run, const ClassCoefficients& cc);
PrimedEval primed_eval_point(const BirationalRun& run, const ClassCoefficients& cc,
                             const PointContractionData& data);
PrimedEval primed_eval_C(const BirationalRun& run, const ClassCoefficients& cc);
PrimedEval primed_eval_D(const BirationalRun& run, const ClassCoefficients& cc);

// Differences (primed form minus direct trilinear computation) for every
// identity applicable to the case.  All entries must be exactly zero.
// For the combined "budget"/"grade" identities, which hold only when the
// case residuals vanish, the difference is emitted only if `on_shell`.
std::vector<std::pair<std::string, Rational>> check_primed_identities(
    const BirationalRun& run, const ClassCoefficients& cc, CaseKind kind,
    const PointContractionData* data = nullptr,
    std::optional<ConicBase> base = std::nullopt, bool on_shell = true);

// ---------------------------------------------------------------------------
// Catalog of admissible targets X' with rho = 1.
//  - name: "P3", "Q3", "B1".."B5", "V2".."V22" (no "V20"), "[2]", "[3]", "[5]"
//  - kx3: (-K_{X'})^3;  fano_index: F(X');  gorenstein_index: I(X')
//  - axial_weight: aw(X') of the index-2 locus (0 for Gorenstein entries)
// ---------------------------------------------------------------------------
struct FanoCatalogEntry {
  std::string name;
  Rational kx3;
  Rational fano_index;
  int gorenstein_index = 1;
  int axial_weight = 0;
};

const std::vector<FanoCatalogEntry>& load_fano_catalog();
const FanoCatalogEntry* find_fano(const std::string& name);

// Entries with the given (-K)^3 whose Fano index can be written a(z+1)/z for
// a positive integer a, excluding the (z = 1, F = 4) pair, which is ruled
// out for divisor-to-curve targets.
std::vector<const FanoCatalogEntry*> admissible_E1_targets(const Rational& z);

// Gorenstein catalog entries of Fano index 1 (the V series).
std::vector<const FanoCatalogEntry*> index_one_targets();

}  // namespace qfano

#endif
