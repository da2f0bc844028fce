// Command-line front end; talks to the engine exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfano.h"

namespace {

struct ScenarioFlags {
  int z_max = -1, u_max = -1, k_max = -1, e_max = -1, n_max = -1, max_flips = -1, a_max = -1;
  int q = -1, h_min = -1;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags* f) {
  cmd->add_option("--z-max", f->z_max, "bound on z");
  cmd->add_option("--u-max", f->u_max, "bound on u");
  cmd->add_option("--k-max", f->k_max, "bound on the integrality witness k");
  cmd->add_option("--e-max", f->e_max, "bound on the flop degree e");
  cmd->add_option("--n-max", f->n_max, "bound on the total axial weight n");
  cmd->add_option("--max-flips", f->max_flips, "bound on the number of flips");
  cmd->add_option("--a-max", f->a_max, "bound on the flip ratios a_i");
  cmd->add_option("--q", f->q, "denominator of the z lattice (z in N/q)");
  cmd->add_option("--h-min", f->h_min, "minimum h^0(-K_X)");
}

struct ScenarioHandle {
  qf_scenario* sc = nullptr;
  ~ScenarioHandle() { qf_scenario_free(sc); }
};

struct RowsHandle {
  qf_rows* rows = nullptr;
  ~RowsHandle() { qf_rows_free(rows); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { qf_string_free(s); }
};

bool apply_flags(qf_scenario* sc, const ScenarioFlags& f) {
  auto set = [&](const char* name, int v) {
    if (v < 0) return true;
    if (qf_scenario_set(sc, name, v) != QF_OK) {
      std::fprintf(stderr, "error: %s\n", qf_last_error());
      return false;
    }
    return true;
  };
  return set("z_max", f.z_max) && set("u_max", f.u_max) && set("k_max", f.k_max) &&
         set("e_max", f.e_max) && set("n_max", f.n_max) && set("max_flips", f.max_flips) &&
         set("a_max", f.a_max) && set("q", f.q) && set("h_min", f.h_min);
}

std::string fixture_dir_default() {
  if (const char* env = std::getenv("QFANO_FIXTURE_DIR")) return env;
  return "fixtures";
}

int die(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, qf_last_error());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfano: exact enumeration of numerical invariants of Q-Fano 3-folds\n"
               "with Picard rank 1, Gorenstein index 2 and Fano index 1/2"};
  app.require_subcommand(1);

  // enumerate ---------------------------------------------------------------
  auto* cmd_enum = app.add_subcommand("enumerate", "run the search and print the tables");
  ScenarioFlags enum_flags;
  add_scenario_flags(cmd_enum, &enum_flags);
  std::string enum_format = "markdown";
  std::string enum_case;
  std::string enum_output;
  bool enum_regroup = false;
  cmd_enum->add_option("--format", enum_format, "json | csv | markdown")->capture_default_str();
  cmd_enum->add_option("--case", enum_case,
                       "restrict to one case tag (E1, E1-zu1, E2..E11, E3/E4, C, C-P2, C-F20, D, "
                       "crepant)");
  cmd_enum->add_option("--output,-o", enum_output, "write to a file instead of standard output");
  cmd_enum->add_flag("--regroup", enum_regroup,
                     "apply the declared exclusions and group the rows by h");

  // verify ------------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "compare a full run with the shipped fixtures");
  ScenarioFlags verify_flags;
  add_scenario_flags(cmd_verify, &verify_flags);
  std::string fixture_dir = fixture_dir_default();
  cmd_verify->add_option("--fixture-dir", fixture_dir, "fixture directory")
      ->capture_default_str();

  // oracle ------------------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "run both the pruned search and the unpruned oracle and compare them");
  ScenarioFlags oracle_flags;
  add_scenario_flags(cmd_oracle, &oracle_flags);

  // eval --------------------------------------------------------------------
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a single candidate");
  std::string ev_case, ev_kx3, ev_e = "0", ev_flips, ev_z, ev_u;
  cmd_eval->add_option("--case", ev_case, "case tag")->required();
  cmd_eval->add_option("--kx3", ev_kx3, "(-K_X)^3 as p/q")->required();
  cmd_eval->add_option("--e", ev_e, "flop degree e (default 0)");
  cmd_eval->add_option("--flips", ev_flips, "flip list a:aw[;a:aw...]");
  cmd_eval->add_option("--z", ev_z, "coefficient z")->required();
  cmd_eval->add_option("--u", ev_u, "coefficient u")->required();

  // rr ----------------------------------------------------------------------
  auto* cmd_rr = app.add_subcommand("rr", "index-2 Riemann-Roch: h^0(-K) and -K.c2");
  std::string rr_kx3;
  int rr_n = 0;
  cmd_rr->add_option("--kx3", rr_kx3, "(-K_X)^3 as p/q")->required();
  cmd_rr->add_option("--n", rr_n, "N = aw(X)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_enum->parsed()) {
    ScenarioHandle sc{qf_scenario_default()};
    if (!apply_flags(sc.sc, enum_flags)) return 2;
    RowsHandle rows;
    if (qf_enumerate(sc.sc, &rows.rows) != QF_OK) return die("enumerate");
    StringHandle text;
    if (enum_regroup) {
      RowsHandle filtered;
      if (qf_geometric_filters(rows.rows, &filtered.rows) != QF_OK) return die("filters");
      if (qf_rows_serialize_by_h(filtered.rows, enum_format.c_str(), &text.s) != QF_OK)
        return die("serialize");
    } else if (!enum_case.empty()) {
      StringHandle csv;
      if (qf_rows_serialize(rows.rows, "csv", &csv.s) != QF_OK) return die("serialize");
      // filter by case tag through the parse/serialize pair to stay format-exact
      std::string in = csv.s, kept;
      std::size_t nl = in.find('\n');
      kept = in.substr(0, nl + 1);
      std::string want = enum_case == "crepant" ? "Crepant" : enum_case;
      for (std::size_t pos = nl + 1; pos < in.size();) {
        std::size_t end = in.find('\n', pos);
        std::string line = in.substr(pos, end - pos);
        std::string tag = line.substr(0, line.find(','));
        bool match = tag == want || (want == "C" && tag.rfind("C-", 0) == 0) ||
                     (want == "point" && tag[0] == 'E' && tag != "E1" && tag != "E1-zu1") ||
                     (want == "E3/E4" && tag.rfind("E3/E4", 0) == 0);
        if (match) kept += line + "\n";
        pos = end + 1;
      }
      RowsHandle selected;
      if (qf_rows_parse(kept.c_str(), "csv", &selected.rows) != QF_OK) return die("parse");
      if (qf_rows_serialize(selected.rows, enum_format.c_str(), &text.s) != QF_OK)
        return die("serialize");
    } else {
      if (qf_rows_serialize(rows.rows, enum_format.c_str(), &text.s) != QF_OK)
        return die("serialize");
    }
    if (enum_output.empty()) {
      std::fputs(text.s, stdout);
    } else {
      std::FILE* f = std::fopen(enum_output.c_str(), "wb");
      if (!f) {
        std::fprintf(stderr, "error: cannot write %s\n", enum_output.c_str());
        return 2;
      }
      std::fputs(text.s, f);
      std::fclose(f);
    }
    return 0;
  }

  if (cmd_verify->parsed()) {
    ScenarioHandle sc{qf_scenario_default()};
    if (!apply_flags(sc.sc, verify_flags)) return 2;
    StringHandle report;
    int rc = qf_verify(sc.sc, fixture_dir.c_str(), &report.s);
    if (rc == QF_OK) {
      if (report.s) std::fputs(report.s, stdout);
      std::fputs("verified: reproduction is bit-exact\n", stdout);
      return 0;
    }
    if (rc == QF_ERR_MISMATCH) {
      if (report.s) std::fputs(report.s, stdout);
      std::fprintf(stderr, "verification failed\n");
      return 1;
    }
    return die("verify");
  }

  if (cmd_oracle->parsed()) {
    ScenarioHandle sc{qf_scenario_default()};
    if (!apply_flags(sc.sc, oracle_flags)) return 2;
    RowsHandle pruned, raw;
    if (qf_enumerate(sc.sc, &pruned.rows) != QF_OK) return die("enumerate");
    if (qf_brute_force_oracle(sc.sc, &raw.rows) != QF_OK) return die("oracle");
    std::fprintf(stderr, "pruned search: %zu rows, oracle: %zu rows\n",
                 qf_rows_count(pruned.rows), qf_rows_count(raw.rows));
    if (qf_rows_equal(pruned.rows, raw.rows)) {
      std::fputs("oracle agrees: identical row sets\n", stdout);
      return 0;
    }
    StringHandle a, b;
    qf_rows_serialize(pruned.rows, "csv", &a.s);
    qf_rows_serialize(raw.rows, "csv", &b.s);
    std::fputs("pruned search:\n", stdout);
    std::fputs(a.s, stdout);
    std::fputs("oracle:\n", stdout);
    std::fputs(b.s, stdout);
    std::fprintf(stderr, "oracle disagrees\n");
    return 1;
  }

  if (cmd_eval->parsed()) {
    int valid = 0;
    StringHandle report;
    int rc = qf_eval_candidate(ev_case.c_str(), ev_kx3.c_str(), ev_e.c_str(), ev_flips.c_str(),
                               ev_z.c_str(), ev_u.c_str(), &valid, &report.s);
    if (rc != QF_OK) return die("eval");
    std::fputs(report.s, stdout);
    return valid ? 0 : 1;
  }

  if (cmd_rr->parsed()) {
    StringHandle h, kc2;
    int warnings = 0;
    int rc = qf_rr(rr_kx3.c_str(), rr_n, &h.s, &kc2.s, &warnings);
    if (rc != QF_OK) return die("rr");
    std::printf("h^0(-K_X) = %s\n-K_X.c2 = %s\n", h.s, kc2.s);
    if (warnings & 1) std::fprintf(stderr, "warning: h is not an integer\n");
    if (warnings & 2)
      std::fprintf(stderr, "warning: N exceeds the positivity bound of -K.c2 (N <= 15)\n");
    return 0;
  }

  return 2;
}
