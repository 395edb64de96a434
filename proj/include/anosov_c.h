// C interface to the anosov shared library: an opaque representation handle
// plus one call per pipeline.  Each call fills a JSON artifact (and a CSV
// sibling where one exists) as a heap string released with
// anosov_free_string.
//
// Every function returns 0 on success or a stable nonzero error code;
// anosov_exit_code collapses any code to the conventional process exit value
// (0 success, 2 validation, 3 mathematical failure, 4 resource cap) and
// anosov_last_error carries the failing call's message, per thread.
//
// The config_json argument, when non-null, is a JSON object echoed into the
// artifact's "config" block alongside the numeric parameters, so callers can
// record file paths and output options without re-serializing the artifact.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#ifndef ANOSOV_C_H
#define ANOSOV_C_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct anosov_rep anosov_rep;

const char* anosov_version(void);
const char* anosov_last_error(void);
int anosov_exit_code(int status);
void anosov_free_string(char* text);

// Parses the representation file schema ({"family", "n", "generators":
// [{"name", "matrix"}], "form"?}), completes missing inverses, validates.
int anosov_rep_parse(const char* json_text, anosov_rep** out_rep);
void anosov_rep_free(anosov_rep* rep);

// Adjoint lift of an SL(2,R) representation into O(1,2), form attached.
int anosov_rep_adjoint_o12(const anosov_rep* rep, anosov_rep** out_rep);

// The parsed representation echoed back as canonical JSON.
int anosov_rep_describe(const anosov_rep* rep, char** out_json);

// Root system dump: roots, Weyl elements with reduced words, longest
// element, opposition involution.
int anosov_weyl_json(const char* family, int rank, const char* config_json,
                     char** out_json);

// Module split, S_phi membership list, w0 exclusion, nonemptiness
// certificate at the given vcd.
int anosov_sphi_json(const char* module, int n, int k, int vcd,
                     const char* config_json, char** out_json);

// Divergence scan over all reduced words up to max_length; the CSV carries
// one row per word length.
int anosov_scan_json(const anosov_rep* rep, int max_length, double slope_min,
                     const char* config_json, char** out_json, char** out_csv);

// Quasi-isometry envelope constants over the same scan.
int anosov_qi_json(const anosov_rep* rep, int max_length, double slope_min,
                   const char* config_json, char** out_json);

// Proximality data for a single matrix; input_json is either a bare matrix
// (array of rows) or {"matrix": ..., "form"?: ...}.  flag_type is "line" or
// "maximal_isotropic".
int anosov_prox_json(const char* input_json, const char* flag_type,
                     const char* config_json, char** out_json);

// Limit-set sample up to max_length; the CSV is the point cloud.
int anosov_limitset_json(const anosov_rep* rep, const char* flag_type,
                         int max_length, const char* config_json,
                         char** out_json, char** out_csv);

// Full domain pipeline: limit-set sample, Monte-Carlo complement fraction at
// the given thickening, and an equivariance check of a fixed off-sample
// query against the sample pushed by equivariance_words pseudo-random words.
// Deterministic for a fixed seed; the CSV is the limit-set point cloud.
int anosov_domain_json(const anosov_rep* rep, const char* flag_type,
                       int max_length, int trials, unsigned long long seed,
                       double thickening, int equivariance_words,
                       const char* config_json, char** out_json,
                       char** out_csv);

// Codimension excess for one classical family; p_or_size is p for the
// two-parameter families and the matrix size otherwise (q then 0).
int anosov_codim_json(const char* family, int p_or_size, int q, int vcd,
                      const char* config_json, char** out_json);

// Minimum Schubert codimension for the (n, k) Grassmannian with its first
// minimizer.
int anosov_schubert_json(int n, int k, const char* config_json,
                         char** out_json);

// Signature of the invariant form on the zero-weight space of the
// two-form module at signature (p, q).
int anosov_signature_json(int p, int q, const char* config_json,
                          char** out_json);

#ifdef __cplusplus
}
#endif

#endif
