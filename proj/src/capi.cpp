#include "qfano.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "qfano/enumerate.hpp"
#include "qfano/riemann_roch.hpp"
#include "qfano/tables.hpp"

using namespace qfano;

struct qf_scenario {
  Scenario sc;
};

struct qf_rows {
  std::vector<SolutionRow> rows;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& ex) {
    return fail(QF_ERR_INVALID, ex.what());
  } catch (const std::domain_error& ex) {
    return fail(QF_ERR_INVALID, ex.what());
  } catch (const std::runtime_error& ex) {
    return fail(QF_ERR_IO, ex.what());
  } catch (const std::exception& ex) {
    return fail(QF_ERR_INTERNAL, ex.what());
  }
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "1.0.0"; }

const char* qf_last_error(void) { return g_last_error.c_str(); }

qf_scenario* qf_scenario_default(void) { return new qf_scenario{}; }

void qf_scenario_free(qf_scenario* sc) { delete sc; }

int qf_scenario_set(qf_scenario* sc, const char* name, int value) {
  if (!sc || !name) return fail(QF_ERR_INVALID, "null argument");
  std::string key = name;
  SearchBounds& b = sc->sc.bounds;
  if (key == "z_max") b.z_max = value;
  else if (key == "u_max") b.u_max = value;
  else if (key == "k_max") b.k_max = value;
  else if (key == "e_max") b.e_max = value;
  else if (key == "n_max") b.n_max = value;
  else if (key == "max_flips") b.max_flips = value;
  else if (key == "a_max") b.a_max = value;
  else if (key == "q") sc->sc.q = value;
  else if (key == "h_min") sc->sc.h_min = value;
  else return fail(QF_ERR_INVALID, "unknown scenario field '" + key + "'");
  if (value <= 0 && key != "max_flips" && key != "n_max")
    return fail(QF_ERR_INVALID, "scenario field '" + key + "' must be positive");
  if (value < 0) return fail(QF_ERR_INVALID, "scenario field '" + key + "' must be >= 0");
  return QF_OK;
}

int qf_scenario_get(const qf_scenario* sc, const char* name, int* value) {
  if (!sc || !name || !value) return fail(QF_ERR_INVALID, "null argument");
  std::string key = name;
  const SearchBounds& b = sc->sc.bounds;
  if (key == "z_max") *value = b.z_max;
  else if (key == "u_max") *value = b.u_max;
  else if (key == "k_max") *value = b.k_max;
  else if (key == "e_max") *value = b.e_max;
  else if (key == "n_max") *value = b.n_max;
  else if (key == "max_flips") *value = b.max_flips;
  else if (key == "a_max") *value = b.a_max;
  else if (key == "q") *value = sc->sc.q;
  else if (key == "h_min") *value = sc->sc.h_min;
  else return fail(QF_ERR_INVALID, "unknown scenario field '" + key + "'");
  return QF_OK;
}

int qf_enumerate(const qf_scenario* sc, qf_rows** out) {
  if (!sc || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new qf_rows{enumerate_solutions(sc->sc).rows};
    return QF_OK;
  });
}

int qf_brute_force_oracle(const qf_scenario* sc, qf_rows** out) {
  if (!sc || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new qf_rows{brute_force_oracle(sc->sc)};
    return QF_OK;
  });
}

int qf_geometric_filters(const qf_rows* rows, qf_rows** out) {
  if (!rows || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new qf_rows{geometric_filters(rows->rows).rows};
    return QF_OK;
  });
}

size_t qf_rows_count(const qf_rows* rows) { return rows ? rows->rows.size() : 0; }

int qf_rows_equal(const qf_rows* a, const qf_rows* b) {
  if (!a || !b) return 0;
  return same_row_set(a->rows, b->rows) ? 1 : 0;
}

void qf_rows_free(qf_rows* rows) { delete rows; }

int qf_boundary_audit(const qf_rows* rows, const qf_scenario* sc, char** report) {
  if (!rows || !sc) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    auto hits = boundary_audit(rows->rows, sc->sc);
    if (report) {
      std::string s;
      for (const std::string& h : hits) s += h + "\n";
      *report = dup_string(s);
    }
    return static_cast<int>(hits.size());
  });
}

int qf_rows_serialize(const qf_rows* rows, const char* format, char** out) {
  if (!rows || !format || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(serialize_rows(rows->rows, parse_format(format)));
    return QF_OK;
  });
}

int qf_rows_serialize_by_h(const qf_rows* rows, const char* format, char** out) {
  if (!rows || !format || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = dup_string(serialize_grouped(regroup_by_h(rows->rows), parse_format(format)));
    return QF_OK;
  });
}

int qf_rows_parse(const char* text, const char* format, qf_rows** out) {
  if (!text || !format || !out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new qf_rows{parse_rows(text, parse_format(format))};
    return QF_OK;
  });
}

void qf_string_free(char* s) { delete[] s; }

int qf_verify(const qf_scenario* sc, const char* fixture_dir, char** report) {
  if (!sc || !fixture_dir) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    FixtureSet fixtures = load_fixtures(fixture_dir);
    EnumerationResult result = enumerate_solutions(sc->sc);
    auto filtered = geometric_filters(result.rows);
    auto grouped = regroup_by_h(filtered.rows);
    auto reports = verify_against_fixtures(fixtures, result.rows, grouped);
    std::string text;
    bool clean = true;
    for (const auto& [name, rep] : reports) {
      if (rep.empty()) {
        text += name + ": ok\n";
      } else {
        clean = false;
        text += rep.str();
      }
    }
    if (report) *report = dup_string(text);
    if (!clean) return fail(QF_ERR_MISMATCH, "verification found differences");
    return QF_OK;
  });
}

int qf_eval_candidate(const char* case_tag, const char* kx3, const char* e, const char* flips,
                      const char* z, const char* u, int* valid, char** report) {
  if (!case_tag || !kx3 || !z || !u || !valid) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    Scenario sc;
    BirationalRun run;
    run.kx3 = Rational::parse(kx3);
    run.r = sc.r;
    run.alpha = sc.alpha;
    run.flop_e = (e && *e) ? Rational::parse(e) : Rational(0);
    if (flips && *flips) {
      std::string text = flips;
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string item =
            text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("bad flip '" + item + "', want a:aw");
        FlipDatum f;
        f.a = Rational::parse(item.substr(0, colon));
        f.aw = static_cast<int>(std::stoll(item.substr(colon + 1)));
        f.d = Rational(f.aw) * sc.bounds.d_step;
        run.flips.push_back(f);
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
    }
    ClassCoefficients cc{Rational::parse(z), Rational::parse(u), Rational(0), Rational(0)};
    NumericalProfile p = run_profile(run);

    std::string tag = case_tag;
    CaseOutcome outcome;
    if (tag == "E1") {
      outcome = eval_case_E1(p, cc);
    } else if (tag == "C-P2" || tag == "C-F20") {
      cc.ratio_m = cc.u / cc.z;
      outcome = eval_case_C(p, cc, tag == "C-P2" ? ConicBase::P2 : ConicBase::F20);
    } else if (tag == "D") {
      cc.ratio_m = cc.u / cc.z;
      outcome = eval_case_D(p, cc);
    } else if (tag == "crepant" || tag == "Crepant") {
      if (!run.flop_e.is_zero() || !run.flips.empty())
        throw std::invalid_argument("a crepant second contraction needs Y = Y' (no flop, no flips)");
      outcome = eval_case_crepant(p, cc);
    } else {
      const PointContractionData* data = find_point_contraction(tag);
      if (!data) throw std::invalid_argument("unknown case '" + tag + "'");
      outcome = eval_case_point(p, cc, *data);
    }

    std::string text;
    text += "profile of (Y', E~): (-K)^3=" + p.d3.str() + " (-K)^2E=" + p.d2e.str() +
            " (-K)E^2=" + p.de2.str() + " E^3=" + p.e3.str() + "\n";
    auto field = [&](const char* name, const std::optional<Rational>& v) {
      if (v) text += std::string(name) + " = " + v->str() + "\n";
    };
    field("(-K_{X'})^3", outcome.kx_prime_3);
    field("-K_{X'}.C", outcome.l_C);
    field("(-K_{E'})^2", outcome.ke_prime_2);
    field("4g+m", outcome.genus_slack);
    field("2l^2", outcome.two_l2);
    field("deg Delta", outcome.delta_l);
    field("deg F", outcome.deg_F);
    for (const auto& r : outcome.residuals)
      text += "residual " + r.first + " = " + r.second.str() + "\n";
    for (const std::string& v : outcome.violations) text += "violated: " + v + "\n";
    text += outcome.valid ? "valid\n" : "invalid\n";
    *valid = outcome.valid ? 1 : 0;
    if (report) *report = dup_string(text);
    return QF_OK;
  });
}

int qf_rr(const char* kx3, int n_aw, char** h_out, char** kc2_out, int* warnings) {
  if (!kx3) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    Rational k = Rational::parse(kx3);
    Rational h = h0_antik(k, n_aw);
    Rational c = k_c2(n_aw);
    int warn = 0;
    if (!h.is_integer()) warn |= 1;
    if (!aw_bound_ok(n_aw)) warn |= 2;
    if (h_out) *h_out = dup_string(h.str());
    if (kc2_out) *kc2_out = dup_string(c.str());
    if (warnings) *warnings = warn;
    return QF_OK;
  });
}

int qf_point_contractions_json(char** out) {
  if (!out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    nlohmann::ordered_json j;
    j["table"] = nlohmann::ordered_json::array();
    for (const PointContractionData& row : load_point_contraction_table()) {
      nlohmann::ordered_json r;
      r["kind"] = row.kind;
      r["disc_num"] = row.disc_num;
      r["target_index"] = row.target_index;
      r["ep3"] = row.ep3.str();
      r["k_ep2"] = row.k_ep2.str();
      r["k2_ep"] = row.k2_ep.str();
      j["table"].push_back(r);
    }
    *out = dup_string(j.dump(2) + "\n");
    return QF_OK;
  });
}

int qf_fano_catalog_json(char** out) {
  if (!out) return fail(QF_ERR_INVALID, "null argument");
  return guarded([&] {
    nlohmann::ordered_json j;
    j["catalog"] = nlohmann::ordered_json::array();
    for (const FanoCatalogEntry& e : load_fano_catalog()) {
      nlohmann::ordered_json r;
      r["name"] = e.name;
      r["kx3"] = e.kx3.str();
      r["fano_index"] = e.fano_index.str();
      r["gorenstein_index"] = e.gorenstein_index;
      r["axial_weight"] = e.axial_weight;
      j["catalog"].push_back(r);
    }
    *out = dup_string(j.dump(2) + "\n");
    return QF_OK;
  });
}

}  // extern "C"
