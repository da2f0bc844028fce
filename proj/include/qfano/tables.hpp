#ifndef QFANO_TABLES_HPP
#define QFANO_TABLES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfano/enumerate.hpp"

namespace qfano {

enum class Format { Json, Csv, Markdown };

Format parse_format(const std::string& name);  // "json" | "csv" | "markdown"

// Deterministic serialization; rationals always "p/q" with q = 1 elided.
std::string serialize_rows(const std::vector<SolutionRow>& rows, Format format);
std::string serialize_grouped(const std::map<int, std::vector<SolutionRow>>& groups,
                              Format format);

// Inverse of serialize_rows for Json and Csv.
std::vector<SolutionRow> parse_rows(const std::string& text, Format format);

// Projection of a row onto a named column ("" when the field is absent).
std::string row_field(const SolutionRow& row, const std::string& column);

// ---------------------------------------------------------------------------
// Fixtures: the reference tables shipped with the project, one JSON file per
// table.  Every cell carries a provenance tag ("table" for a value printed in
// the reference tables, "derived: ..." for one forced by the constraint
// identities); rows may carry annotations where the printed value disagrees
// with the value the equations force.
// ---------------------------------------------------------------------------
struct FixtureAnnotation {
  std::string field;
  std::string printed;
  std::string note;
};

struct FixtureRow {
  std::map<std::string, std::string> values;
  std::string existence;  // "example-known" | "unknown" | "questioned"
  std::map<std::string, std::string> provenance;  // per-cell, fully materialized
  std::vector<FixtureAnnotation> annotations;
};

struct FixtureTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<FixtureRow> rows;
};

struct FixtureSet {
  FixtureTable tables[5];    // table1 .. table5
  FixtureTable crepant;      // the single crepant solution
  std::map<int, FixtureTable> by_h;  // regrouped presentation
};

// Throws std::runtime_error naming file / row / column on any schema problem.
FixtureSet load_fixtures(const std::string& dir);
FixtureTable load_fixture_file(const std::string& path);

// ---------------------------------------------------------------------------
// Diffing: symmetric difference plus per-field mismatch detail.  An empty
// report means bit-exact reproduction.  The existence column is metadata and
// never participates.
// ---------------------------------------------------------------------------
struct DiffReport {
  std::vector<std::string> missing;     // fixture rows absent from the actual set
  std::vector<std::string> unexpected;  // actual rows absent from the fixture
  std::vector<std::string> mismatches;  // key matched, some field differs

  bool empty() const { return missing.empty() && unexpected.empty() && mismatches.empty(); }
  std::string str() const;
};

DiffReport diff(const FixtureTable& expected, const std::vector<SolutionRow>& actual);

// Full pipeline verification against a fixture directory: tables 1..5 and
// the crepant row against the raw enumeration, the by-h groups against the
// filtered and regrouped rows.  Returns one report per fixture table.
std::vector<std::pair<std::string, DiffReport>> verify_against_fixtures(
    const FixtureSet& fixtures, const std::vector<SolutionRow>& enumerated,
    const std::map<int, std::vector<SolutionRow>>& regrouped);

}  // namespace qfano

#endif
