/* quditlab C API: qudit states, tomography, entanglement measures, spatial
 * modes, and bit-commitment security analysis behind an opaque handle.
 *
 * Conventions:
 *  - Every function returning qdl_status reports failures through the code
 *    and leaves a message readable via qdl_last_error() (thread local).
 *  - Joint systems order subsystem 0 slowest: basis index of |j,k> on dims
 *    {d0,d1} is j*d1 + k.
 *  - Strings returned through char** are heap allocated; release them with
 *    qdl_string_free. States returned through qdl_state** are released with
 *    qdl_state_free.
 */
#ifndef QUDITLAB_H
#define QUDITLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QDL_API __declspec(dllexport)
#else
#define QDL_API __attribute__((visibility("default")))
#endif

typedef enum qdl_status {
  QDL_OK = 0,
  QDL_ERR_INVALID_ARGUMENT = 1,
  QDL_ERR_RUNTIME = 2,
  QDL_ERR_BAD_ALLOC = 3
} qdl_status;

typedef struct qdl_state qdl_state;

QDL_API const char* qdl_version(void);
QDL_API int qdl_schema_version(void);
QDL_API const char* qdl_status_name(qdl_status status);
/* Message from the most recent failing call on this thread; empty if none. */
QDL_API const char* qdl_last_error(void);

QDL_API void qdl_string_free(char* s);
QDL_API void qdl_state_free(qdl_state* state);

/* --- construction ------------------------------------------------------ */

/* Parses a density/1 JSON document. */
QDL_API qdl_status qdl_state_from_json(const char* json, qdl_state** out);
QDL_API qdl_status qdl_state_to_json(const qdl_state* state, char** out_json);

/* Amplitude arrays of length dims[0]*...*dims[n_dims-1]; im may be NULL for
 * a real vector. The vector is normalized (zero vectors are rejected). */
QDL_API qdl_status qdl_state_pure(const double* re, const double* im,
                                  const int* dims, int n_dims, qdl_state** out);
QDL_API qdl_status qdl_state_maximally_mixed(const int* dims, int n_dims,
                                             qdl_state** out);
/* (1/sqrt(d)) sum_j |jj> on dims {d,d}. */
QDL_API qdl_status qdl_state_max_entangled(int d, qdl_state** out);
/* (|00> + eps|11>)/sqrt(1+|eps|^2) */
QDL_API qdl_status qdl_state_nonmax_qubit(double eps_re, double eps_im,
                                          qdl_state** out);
/* (|02> + eps|11> + |20>)/sqrt(2+|eps|^2) */
QDL_API qdl_status qdl_state_nonmax_qutrit(double eps_re, double eps_im,
                                           qdl_state** out);
QDL_API qdl_status qdl_state_depolarize(const qdl_state* state, double p,
                                        qdl_state** out);
/* Mixes with white noise until the linear entropy reaches target. */
QDL_API qdl_status qdl_state_mix_to_linear_entropy(const qdl_state* state,
                                                   double target, qdl_state** out);

/* --- inspection --------------------------------------------------------- */

QDL_API qdl_status qdl_state_dims(const qdl_state* state, int* out_dims,
                                  int max_dims, int* out_n_dims);
/* Row-major real/imag parts; each buffer needs dim*dim doubles. */
QDL_API qdl_status qdl_state_matrix(const qdl_state* state, double* out_re,
                                    double* out_im, int max_entries);

/* --- composition and measures ------------------------------------------ */

QDL_API qdl_status qdl_tensor(const qdl_state* a, const qdl_state* b,
                              qdl_state** out);
/* Traces out everything except subsystem `keep`. */
QDL_API qdl_status qdl_partial_trace(const qdl_state* state, int keep,
                                     qdl_state** out);
QDL_API qdl_status qdl_trace_distance(const qdl_state* a, const qdl_state* b,
                                      double* out);
/* Squared convention: F(rho,rho) = 1 and F = <psi|rho|psi> for pure targets. */
QDL_API qdl_status qdl_fidelity(const qdl_state* a, const qdl_state* b,
                                double* out);
QDL_API qdl_status qdl_root_fidelity(const qdl_state* a, const qdl_state* b,
                                     double* out);
QDL_API qdl_status qdl_purity(const qdl_state* state, double* out);
QDL_API qdl_status qdl_linear_entropy(const qdl_state* state, double* out);
QDL_API qdl_status qdl_von_neumann_entropy(const qdl_state* state, double* out);

/* --- entanglement ------------------------------------------------------- */

QDL_API qdl_status qdl_concurrence(const qdl_state* state, double* out);
QDL_API qdl_status qdl_tangle(const qdl_state* state, double* out);
QDL_API qdl_status qdl_eof_upper_bound(const qdl_state* state, double* out);
/* entanglement_report/1 JSON for a two-arm state. */
QDL_API qdl_status qdl_entanglement_report(const qdl_state* state,
                                           char** out_json);

/* --- spatial modes ------------------------------------------------------ */

QDL_API qdl_status qdl_gouy_phase(int order, double z, double z_r, double* out);
/* label: "HG<r><s>" or "LGV<p><l>" with optional comma and signed l,
 * e.g. "HG10", "LGV0+1", "LGV0,-1". */
QDL_API qdl_status qdl_mode_amplitude(const char* label, double waist, double x,
                                      double y, double* out_re, double* out_im);
/* Buffers of pixels*pixels doubles, row 0 at the top (+y). */
QDL_API qdl_status qdl_mode_raster(const char* label, double waist, int pixels,
                                   double half_width_waists, double* out_intensity,
                                   double* out_phase, int max_entries);
/* vortex_decomposition/1 JSON for a vortex displaced along +x. */
QDL_API qdl_status qdl_modes_decompose(double displacement, double waist,
                                       char** out_json);
/* Singularity rotation of the displaced-vortex superposition after
 * propagating to z; equals atan(z/z_r). */
QDL_API qdl_status qdl_vortex_rotation(double displacement, double waist,
                                       double z, double z_r, double* out);

/* --- tomography --------------------------------------------------------- */

/* counts/1 JSON for a full two-state-superposition measurement sweep of the
 * given state (1 or 2 arms, minimal or overcomplete analyzers). Counts are
 * Poisson draws with mean shots*p; exact != 0 rounds shots*p instead and
 * ignores seed. */
QDL_API qdl_status qdl_tomo_simulate(const qdl_state* state, int overcomplete,
                                     long long shots, uint64_t seed, int exact,
                                     char** out_counts_json);
/* Maximum-likelihood reconstruction from counts/1 JSON. Pass max_iters <= 0
 * or restarts < 0 for the defaults. Either output may be NULL if not
 * wanted. Emits a tomo_report/1 document. */
QDL_API qdl_status qdl_tomo_reconstruct(const char* counts_json, int max_iters,
                                        int least_squares, int restarts,
                                        qdl_state** out_state,
                                        char** out_report_json);

/* --- bit commitment ----------------------------------------------------- */

/* bc_report/1 security analysis of a two-qutrit source state. */
QDL_API qdl_status qdl_bc_report(const qdl_state* source, char** out_json);
QDL_API qdl_status qdl_bc_security_point(const qdl_state* source, double* out_k,
                                         double* out_c);
/* CSV of the W/X/Y/Z reference curves: curve,param,k,c. */
QDL_API qdl_status qdl_bc_curves_csv(char** out_csv);
/* bc_threshold/1: residual weight where the token pair re-enters the qubit
 * region. */
QDL_API qdl_status qdl_bc_threshold(double lambda, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* QUDITLAB_H */
