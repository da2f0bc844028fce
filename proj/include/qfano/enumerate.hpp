#ifndef QFANO_ENUMERATE_HPP
#define QFANO_ENUMERATE_HPP

#include <map>
#include <string>
#include <vector>

#include "qfano/contraction.hpp"
#include "qfano/profile.hpp"

namespace qfano {

// Search box.  The boundary audit asserts that no emitted solution touches
// any of these limits, so enlarging the box cannot change the output.
struct SearchBounds {
  int z_max = 8;
  int u_max = 10;      // u ranges over half-integers 1/2 .. u_max
  int k_max = 8;
  int e_max = 32;
  int n_max = 14;      // total axial weight on flipping curves
  int max_flips = 4;
  int a_max = 12;      // flip ratios range over even integers 2 .. a_max
  Rational d_step = Rational(1, 2);  // flip degree quantum: d_i = aw_i * d_step
};

// The enumeration scenario: blow-up of weight 1/2(1,1,1,2) at an index-2
// point of a rho=1 Q-Fano 3-fold with I(X)=2, F(X)=1/2 and h^0(-K_X) >= 4.
// alpha = 1 is forced by (-K_Y)^3 = (-K_X)^3 - 1/2 together with the
// blow-up relations; q = 1 normalises -K_X against the generator of the
// divisor class group modulo numerical equivalence.
struct Scenario {
  int r = 2;
  int q = 1;
  Rational alpha = Rational(1);
  int cartier_index_s = 1;  // s = 1: E Cartier, so the flop degree e is an integer
  int h_min = 4;
  SearchBounds bounds;
  bool cross_check = false;  // verify closed forms against the trilinear route
                             // on every candidate that reaches evaluation
};

// One classified case.
struct SolutionRow {
  std::string case_tag;  // E1 | E1-zu1 | point type | C-P2 | C-F20 | D | Crepant
  int h = 0;
  Rational kx3;
  int N = 0;
  int e = 0;
  int n = 0;
  Rational z;
  Rational u;
  Rational k;  // integrality witness, 0 when not applicable
  std::vector<FlipDatum> flips;
  CaseOutcome derived;
  std::string x_prime;
  std::vector<std::string> flags;

  // Identity on all semantic fields (flags excluded).
  bool same_solution(const SolutionRow& o) const;
};

// A candidate removed by a named geometric rule, kept for auditing.
struct Removal {
  SolutionRow row;
  std::string rule;
  std::string reason;
};

struct EnumerationResult {
  std::vector<SolutionRow> rows;       // the classification tables' rows
  std::vector<Removal> removed;        // structural exclusions applied in-search
};

// Exhaustive claim-pruned search.  The row set equals the classification
// tables: 15 rows of divisor-to-curve type with u = z+1, 6 with z = u = 1,
// 4 divisor-to-point rows, 14 conic-bundle rows, 6 del Pezzo fibration rows,
// and the single crepant solution.
EnumerationResult enumerate_solutions(const Scenario& sc);

// Same search with no claim-based pruning: every candidate in the box is
// generated and tested against the full conjunction of equations and
// validity rules only at the end, deriving each quantity through the
// trilinear-form route instead of the closed forms.  Must return the
// identical row set.
std::vector<SolutionRow> brute_force_oracle(const Scenario& sc);

// Declared non-numeric exclusions applied between the raw tables and the
// regrouped-by-h presentation.
struct FilterResult {
  std::vector<SolutionRow> rows;
  std::vector<Removal> removed;
};
FilterResult geometric_filters(const std::vector<SolutionRow>& rows);

// Rows regrouped by h, each group in canonical order.
std::map<int, std::vector<SolutionRow>> regroup_by_h(const std::vector<SolutionRow>& rows);

// Names of the bounds any row touches; empty means the box is conservative.
std::vector<std::string> boundary_audit(const std::vector<SolutionRow>& rows,
                                        const Scenario& sc);

// Canonical order: (case family, h, kx3, N, e desc, z, tag, x').
void canonical_sort(std::vector<SolutionRow>& rows);

// Which of the five tables (1..5) a row belongs to; 0 for the crepant row.
int table_of(const SolutionRow& row);

bool same_row_set(const std::vector<SolutionRow>& a, const std::vector<SolutionRow>& b);

}  // namespace qfano

#endif
