/* qfano.h - C interface to the Q-Fano 3-fold numerical classification engine.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions return QF_OK (0) on success or a negative status; the thread's
 * last error text is available through qf_last_error().  Rational numbers
 * cross the boundary as exact "p/q" strings (q = 1 elided), never decimals.
 */

#ifndef QFANO_H
#define QFANO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define QF_OK 0
#define QF_ERR_INVALID -1   /* bad argument, bad rational, unknown name */
#define QF_ERR_IO -2        /* missing or malformed file */
#define QF_ERR_MISMATCH -3  /* verification found differences */
#define QF_ERR_INTERNAL -4

typedef struct qf_scenario qf_scenario;
typedef struct qf_rows qf_rows;

const char* qf_version(void);

/* Last error message for the calling thread ("" when none). */
const char* qf_last_error(void);

/* ---- scenario ---------------------------------------------------------- */

qf_scenario* qf_scenario_default(void);
void qf_scenario_free(qf_scenario* sc);

/* Named bounds: "z_max", "u_max", "k_max", "e_max", "n_max", "max_flips",
 * "a_max"; also "q" and "h_min". */
int qf_scenario_set(qf_scenario* sc, const char* name, int value);
int qf_scenario_get(const qf_scenario* sc, const char* name, int* value);

/* ---- enumeration ------------------------------------------------------- */

/* Claim-pruned search; rows in canonical order. */
int qf_enumerate(const qf_scenario* sc, qf_rows** out);

/* Unpruned search testing the full conjunction only at the end. */
int qf_brute_force_oracle(const qf_scenario* sc, qf_rows** out);

/* Declared exclusions between the raw tables and the by-h presentation. */
int qf_geometric_filters(const qf_rows* rows, qf_rows** out);

size_t qf_rows_count(const qf_rows* rows);
int qf_rows_equal(const qf_rows* a, const qf_rows* b);
void qf_rows_free(qf_rows* rows);

/* No emitted row may touch a search bound; returns the number of violations
 * and, when any, writes a description (caller frees with qf_string_free). */
int qf_boundary_audit(const qf_rows* rows, const qf_scenario* sc, char** report);

/* ---- serialization ----------------------------------------------------- */

/* format: "json" | "csv" | "markdown".  Caller frees with qf_string_free. */
int qf_rows_serialize(const qf_rows* rows, const char* format, char** out);

/* Rows regrouped by h and serialized ("markdown" gives one table per h). */
int qf_rows_serialize_by_h(const qf_rows* rows, const char* format, char** out);

/* Inverse of qf_rows_serialize for "json" and "csv". */
int qf_rows_parse(const char* text, const char* format, qf_rows** out);

void qf_string_free(char* s);

/* ---- verification ------------------------------------------------------ */

/* Runs the pipeline (enumerate, filters, regroup) for the scenario and
 * compares it with the fixture directory.  Returns QF_OK on bit-exact
 * reproduction, QF_ERR_MISMATCH with a report otherwise, QF_ERR_IO if the
 * fixtures cannot be loaded. */
int qf_verify(const qf_scenario* sc, const char* fixture_dir, char** report);

/* ---- single-candidate evaluation --------------------------------------- */

/* case_tag: "E1" | "E2" | "E3/E4" | ... | "E11" | "C-P2" | "C-F20" | "D" |
 * "crepant".  flips: "a:aw;a:aw" or "" / NULL.  Writes a printable report
 * and sets *valid.  Invalid candidates still return QF_OK; argument errors
 * return QF_ERR_INVALID. */
int qf_eval_candidate(const char* case_tag, const char* kx3, const char* e, const char* flips,
                      const char* z, const char* u, int* valid, char** report);

/* ---- index-2 Riemann-Roch helpers -------------------------------------- */

/* h = 3 + kx3/2 - N/4 and -K.c2 = 24 - 3N/2, as "p/q" strings.
 * warnings: bit 0 set when h is not an integer, bit 1 when N exceeds the
 * positivity bound of -K.c2. */
int qf_rr(const char* kx3, int n_aw, char** h_out, char** kc2_out, int* warnings);

/* ---- embedded reference data ------------------------------------------- */

/* The point-contraction table and target catalog as JSON (caller frees). */
int qf_point_contractions_json(char** out);
int qf_fano_catalog_json(char** out);

#ifdef __cplusplus
}
#endif

#endif /* QFANO_H */
