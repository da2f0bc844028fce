#include "qfano/tables.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qfano {

using ordered_json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "markdown" || name == "md") return Format::Markdown;
  throw std::invalid_argument("unknown format '" + name + "' (json | csv | markdown)");
}

namespace {

std::string opt_str(const std::optional<Rational>& v) { return v ? v->str() : ""; }

std::string flips_str(const std::vector<FlipDatum>& flips) {
  std::string s;
  for (const FlipDatum& f : flips) {
    if (!s.empty()) s += ";";
    s += f.a.str() + ":" + std::to_string(f.aw);
  }
  return s;
}

std::vector<FlipDatum> parse_flips(const std::string& s) {
  std::vector<FlipDatum> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t semi = s.find(';', pos);
    std::string item = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad flip item '" + item + "'");
    FlipDatum f;
    f.a = Rational::parse(item.substr(0, colon));
    f.aw = static_cast<int>(std::stoll(item.substr(colon + 1)));
    f.d = Rational(f.aw, 2);
    out.push_back(f);
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "case", "h",  "kx3",        "N",    "e",       "n",     "z",
      "u",    "k",  "x_prime",    "kx_prime_3", "l_C", "genus_slack",
      "two_l2", "delta_l", "deg_F", "flips", "flags"};
  return cols;
}

std::optional<Rational> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return Rational::parse(s);
}

}  // namespace

std::string row_field(const SolutionRow& row, const std::string& column) {
  if (column == "case") return row.case_tag;
  if (column == "h") return std::to_string(row.h);
  if (column == "kx3") return row.kx3.str();
  if (column == "N") return std::to_string(row.N);
  if (column == "e") return std::to_string(row.e);
  if (column == "n") return std::to_string(row.n);
  if (column == "z") return row.z.str();
  if (column == "u") return row.u.str();
  if (column == "k") return row.k.is_zero() ? "" : row.k.str();
  if (column == "x_prime") return row.x_prime;
  if (column == "kx_prime_3") return opt_str(row.derived.kx_prime_3);
  if (column == "l_C") return opt_str(row.derived.l_C);
  if (column == "genus_slack") return opt_str(row.derived.genus_slack);
  if (column == "two_l2") return opt_str(row.derived.two_l2);
  if (column == "delta_l") return opt_str(row.derived.delta_l);
  if (column == "deg_F") return opt_str(row.derived.deg_F);
  if (column == "flips") return flips_str(row.flips);
  if (column == "flags") return join(row.flags, ";");
  throw std::invalid_argument("unknown column '" + column + "'");
}

namespace {

ordered_json row_to_json(const SolutionRow& row) {
  ordered_json j;
  for (const std::string& col : csv_columns()) j[col] = row_field(row, col);
  return j;
}

SolutionRow row_from_strings(const std::map<std::string, std::string>& v) {
  auto get = [&](const std::string& k) -> std::string {
    auto it = v.find(k);
    return it == v.end() ? "" : it->second;
  };
  SolutionRow row;
  row.case_tag = get("case");
  row.h = static_cast<int>(std::stoll(get("h")));
  row.kx3 = Rational::parse(get("kx3"));
  row.N = static_cast<int>(std::stoll(get("N")));
  row.e = static_cast<int>(std::stoll(get("e")));
  row.n = static_cast<int>(std::stoll(get("n")));
  row.z = Rational::parse(get("z"));
  row.u = Rational::parse(get("u"));
  row.k = get("k").empty() ? Rational(0) : Rational::parse(get("k"));
  row.x_prime = get("x_prime");
  row.derived.kx_prime_3 = parse_opt(get("kx_prime_3"));
  row.derived.l_C = parse_opt(get("l_C"));
  row.derived.genus_slack = parse_opt(get("genus_slack"));
  row.derived.two_l2 = parse_opt(get("two_l2"));
  row.derived.delta_l = parse_opt(get("delta_l"));
  row.derived.deg_F = parse_opt(get("deg_F"));
  row.derived.valid = true;
  if (!get("flips").empty()) row.flips = parse_flips(get("flips"));
  if (!get("flags").empty()) {
    std::stringstream ss(get("flags"));
    std::string item;
    while (std::getline(ss, item, ';')) row.flags.push_back(item);
  }
  return row;
}

std::string csv_escape(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct TableLayout {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::string> headers;
};

const TableLayout& table_layout(int table) {
  static const TableLayout layouts[6] = {
      {"Crepant divisorial contraction",
       {"h", "kx3", "N", "e", "n", "z", "u", "kx_prime_3"},
       {"h", "(-K_X)^3", "N", "e", "n", "z", "u", "(-K_X')^3"}},
      {"Table 1: f' of type E1 with u = z+1",
       {"h", "kx3", "N", "e", "n", "z", "l_C", "x_prime"},
       {"h", "(-K_X)^3", "N", "e", "n", "z", "l_C", "X'"}},
      {"Table 2: f' of type E1 with z = u = 1",
       {"kx3", "N", "e", "l_C", "x_prime"},
       {"(-K_X)^3", "N", "e", "l_C", "X'"}},
      {"Table 3: f' contracts a divisor to a point",
       {"h", "kx3", "N", "e", "n", "case", "x_prime"},
       {"h", "(-K_X)^3", "N", "e", "n", "type", "X'"}},
      {"Table 4: f' is a conic bundle",
       {"h", "kx3", "N", "e", "n", "delta_l", "x_prime"},
       {"h", "(-K_X)^3", "N", "e", "n", "deg Delta", "X'"}},
      {"Table 5: f' is a del Pezzo fibration",
       {"h", "kx3", "N", "e", "n", "deg_F"},
       {"h", "(-K_X)^3", "N", "e", "n", "deg F"}},
  };
  return layouts[table];
}

void markdown_table(std::string& out, const TableLayout& layout,
                    const std::vector<SolutionRow>& rows) {
  out += "## " + layout.title + "\n\n";
  out += "| " + join(layout.headers, " | ") + " |\n";
  std::vector<std::string> dashes(layout.headers.size(), "---");
  out += "| " + join(dashes, " | ") + " |\n";
  for (const SolutionRow& row : rows) {
    std::vector<std::string> cells;
    for (const std::string& col : layout.columns) {
      std::string v = row_field(row, col);
      cells.push_back(v.empty() ? "/" : v);
    }
    out += "| " + join(cells, " | ") + " |\n";
  }
  out += "\n";
}

}  // namespace

std::string serialize_rows(const std::vector<SolutionRow>& rows, Format format) {
  switch (format) {
    case Format::Json: {
      ordered_json j;
      j["schema"] = "qfano-rows/1";
      j["rows"] = ordered_json::array();
      for (const SolutionRow& row : rows) j["rows"].push_back(row_to_json(row));
      return j.dump(2) + "\n";
    }
    case Format::Csv: {
      std::string out = join(csv_columns(), ",") + "\n";
      for (const SolutionRow& row : rows) {
        std::vector<std::string> cells;
        for (const std::string& col : csv_columns()) cells.push_back(csv_escape(row_field(row, col)));
        out += join(cells, ",") + "\n";
      }
      return out;
    }
    case Format::Markdown: {
      std::string out;
      for (int table = 1; table <= 5; ++table) {
        std::vector<SolutionRow> part;
        for (const SolutionRow& row : rows)
          if (table_of(row) == table) part.push_back(row);
        if (!part.empty()) markdown_table(out, table_layout(table), part);
      }
      std::vector<SolutionRow> crep;
      for (const SolutionRow& row : rows)
        if (table_of(row) == 0) crep.push_back(row);
      if (!crep.empty()) markdown_table(out, table_layout(0), crep);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string serialize_grouped(const std::map<int, std::vector<SolutionRow>>& groups,
                              Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["schema"] = "qfano-groups/1";
    j["groups"] = ordered_json::array();
    for (const auto& [h, rows] : groups) {
      ordered_json g;
      g["h"] = h;
      g["rows"] = ordered_json::array();
      for (const SolutionRow& row : rows) g["rows"].push_back(row_to_json(row));
      j["groups"].push_back(g);
    }
    return j.dump(2) + "\n";
  }
  if (format == Format::Csv) {
    std::vector<SolutionRow> flat;
    for (const auto& [h, rows] : groups) flat.insert(flat.end(), rows.begin(), rows.end());
    return serialize_rows(flat, Format::Csv);
  }
  std::string out;
  static const std::vector<std::string> cols = {"kx3", "N", "e",       "n",    "z",
                                                "u",   "l_C", "delta_l", "deg_F", "case",
                                                "x_prime"};
  static const std::vector<std::string> heads = {"(-K_X)^3", "N", "e",     "n",     "z",
                                                 "u",        "l_C", "deg Delta", "deg F", "f'",
                                                 "X'"};
  for (const auto& [h, rows] : groups) {
    TableLayout layout{"h = " + std::to_string(h), cols, heads};
    markdown_table(out, layout, rows);
  }
  return out;
}

std::vector<SolutionRow> parse_rows(const std::string& text, Format format) {
  std::vector<SolutionRow> rows;
  if (format == Format::Json) {
    ordered_json j = ordered_json::parse(text);
    if (!j.contains("rows")) throw std::invalid_argument("parse_rows: missing 'rows'");
    for (const auto& jr : j["rows"]) {
      std::map<std::string, std::string> v;
      for (auto it = jr.begin(); it != jr.end(); ++it) v[it.key()] = it.value().get<std::string>();
      rows.push_back(row_from_strings(v));
    }
    return rows;
  }
  if (format == Format::Csv) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) throw std::invalid_argument("parse_rows: empty csv");
    std::vector<std::string> header = csv_split(line);
    while (std::getline(ss, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells = csv_split(line);
      if (cells.size() != header.size())
        throw std::invalid_argument("parse_rows: ragged csv row '" + line + "'");
      std::map<std::string, std::string> v;
      for (std::size_t i = 0; i < header.size(); ++i) v[header[i]] = cells[i];
      rows.push_back(row_from_strings(v));
    }
    return rows;
  }
  throw std::invalid_argument("parse_rows: markdown is write-only");
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

FixtureTable load_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixture file not found: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw std::runtime_error("fixture " + path + ": bad json: " + ex.what());
  }
  FixtureTable table;
  if (!j.contains("name") || !j.contains("columns") || !j.contains("rows"))
    throw std::runtime_error("fixture " + path + ": need name/columns/rows");
  table.name = j["name"].get<std::string>();
  for (const auto& c : j["columns"]) table.columns.push_back(c.get<std::string>());
  int row_index = 0;
  for (const auto& jr : j["rows"]) {
    FixtureRow row;
    if (!jr.contains("values"))
      throw std::runtime_error("fixture " + path + ": row " + std::to_string(row_index) +
                               " has no values");
    for (auto it = jr["values"].begin(); it != jr["values"].end(); ++it)
      row.values[it.key()] = it.value().get<std::string>();
    std::string default_prov = jr.value("provenance", "table");
    for (const std::string& col : table.columns) {
      if (!row.values.count(col))
        throw std::runtime_error("fixture " + path + ": row " + std::to_string(row_index) +
                                 " missing column '" + col + "'");
      row.provenance[col] = default_prov;
    }
    if (jr.contains("provenance_overrides"))
      for (auto it = jr["provenance_overrides"].begin(); it != jr["provenance_overrides"].end();
           ++it) {
        if (!row.values.count(it.key()))
          throw std::runtime_error("fixture " + path + ": provenance override for unknown column '" +
                                   it.key() + "'");
        row.provenance[it.key()] = it.value().get<std::string>();
      }
    row.existence = jr.value("existence", "unknown");
    if (row.existence != "example-known" && row.existence != "unknown" &&
        row.existence != "questioned")
      throw std::runtime_error("fixture " + path + ": bad existence mark '" + row.existence + "'");
    if (jr.contains("annotations"))
      for (const auto& ja : jr["annotations"]) {
        FixtureAnnotation a;
        a.field = ja.at("field").get<std::string>();
        a.printed = ja.at("printed").get<std::string>();
        a.note = ja.at("note").get<std::string>();
        row.annotations.push_back(a);
      }
    table.rows.push_back(std::move(row));
    ++row_index;
  }
  return table;
}

FixtureSet load_fixtures(const std::string& dir) {
  FixtureSet set;
  for (int t = 1; t <= 5; ++t)
    set.tables[t - 1] = load_fixture_file(dir + "/table" + std::to_string(t) + ".json");
  set.crepant = load_fixture_file(dir + "/crepant.json");
  FixtureTable grouped = load_fixture_file(dir + "/regrouped_by_h.json");
  // split the regrouped table into per-h fixtures, preserving columns
  for (const FixtureRow& row : grouped.rows) {
    auto it = row.values.find("h");
    if (it == row.values.end()) throw std::runtime_error("regrouped fixture row lacks h");
    int h = static_cast<int>(std::stoll(it->second));
    FixtureTable& tab = set.by_h[h];
    if (tab.name.empty()) {
      tab.name = grouped.name + "/h=" + it->second;
      tab.columns = grouped.columns;
    }
    tab.rows.push_back(row);
  }
  return set;
}

// ---------------------------------------------------------------------------
// Diff
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& key_columns() {
  static const std::vector<std::string> keys = {"case", "h", "kx3", "N", "e", "n", "z"};
  return keys;
}

std::string key_of(const std::map<std::string, std::string>& values,
                   const std::vector<std::string>& columns) {
  std::string key;
  for (const std::string& k : key_columns()) {
    bool in_table = false;
    for (const std::string& c : columns)
      if (c == k) in_table = true;
    if (!in_table) continue;
    auto it = values.find(k);
    key += (it == values.end() ? std::string() : it->second) + "|";
  }
  return key;
}

std::string describe(const std::map<std::string, std::string>& values) {
  std::string s;
  for (const char* k : {"case", "h", "kx3", "N", "e", "n"}) {
    auto it = values.find(k);
    if (it != values.end() && !it->second.empty())
      s += std::string(k) + "=" + it->second + " ";
  }
  if (!s.empty()) s.pop_back();
  return s;
}

std::map<std::string, std::string> project(const SolutionRow& row,
                                           const std::vector<std::string>& columns) {
  std::map<std::string, std::string> v;
  for (const std::string& c : columns) v[c] = row_field(row, c);
  return v;
}

}  // namespace

std::string DiffReport::str() const {
  std::string s;
  for (const std::string& m : missing) s += "missing: " + m + "\n";
  for (const std::string& m : unexpected) s += "unexpected: " + m + "\n";
  for (const std::string& m : mismatches) s += "field mismatch: " + m + "\n";
  return s;
}

DiffReport diff(const FixtureTable& expected, const std::vector<SolutionRow>& actual) {
  DiffReport report;
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> pool;
  for (const SolutionRow& row : actual) {
    auto v = project(row, expected.columns);
    pool.emplace_back(key_of(v, expected.columns), v);
  }
  std::vector<bool> used(pool.size(), false);
  for (const FixtureRow& frow : expected.rows) {
    std::string key = key_of(frow.values, expected.columns);
    int found = -1;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!used[i] && pool[i].first == key) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) {
      report.missing.push_back(expected.name + ": " + describe(frow.values));
      continue;
    }
    used[found] = true;
    for (const std::string& col : expected.columns) {
      const std::string& want = frow.values.at(col);
      const std::string& got = pool[found].second.at(col);
      if (want != got)
        report.mismatches.push_back(expected.name + ": " + describe(frow.values) + ": " + col +
                                    " expected " + want + ", got " + got);
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!used[i])
      report.unexpected.push_back(expected.name + ": " + describe(pool[i].second));
  return report;
}

std::vector<std::pair<std::string, DiffReport>> verify_against_fixtures(
    const FixtureSet& fixtures, const std::vector<SolutionRow>& enumerated,
    const std::map<int, std::vector<SolutionRow>>& regrouped) {
  std::vector<std::pair<std::string, DiffReport>> reports;
  for (int t = 1; t <= 5; ++t) {
    std::vector<SolutionRow> part;
    for (const SolutionRow& row : enumerated)
      if (table_of(row) == t) part.push_back(row);
    reports.emplace_back(fixtures.tables[t - 1].name, diff(fixtures.tables[t - 1], part));
  }
  {
    std::vector<SolutionRow> crep;
    for (const SolutionRow& row : enumerated)
      if (table_of(row) == 0) crep.push_back(row);
    reports.emplace_back(fixtures.crepant.name, diff(fixtures.crepant, crep));
  }
  for (const auto& [h, table] : fixtures.by_h) {
    auto it = regrouped.find(h);
    std::vector<SolutionRow> rows = it == regrouped.end() ? std::vector<SolutionRow>{} : it->second;
    reports.emplace_back(table.name, diff(table, rows));
  }
  // groups present in the run but absent from the fixtures
  for (const auto& [h, rows] : regrouped) {
    if (fixtures.by_h.count(h) || rows.empty()) continue;
    DiffReport r;
    for (const SolutionRow& row : rows)
      r.unexpected.push_back("h=" + std::to_string(h) + ": " +
                             describe(project(row, fixtures.tables[0].columns)));
    reports.emplace_back("regrouped/h=" + std::to_string(h), r);
  }
  return reports;
}

}  // namespace qfano
