#ifndef MGALPHA_H
#define MGALPHA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgaModel {
  MGA_MODEL_MG_STACK = 0,
  MGA_MODEL_PS_PULLBACK = 1,
  MGA_MODEL_COARSE_DAGGER = 2,
} MgaModel;

typedef enum MgaNef {
  MGA_NEF_NEF = 0,
  MGA_NEF_NOT_NEF = 1,
  MGA_NEF_INAPPLICABLE = 2,
} MgaNef;

typedef enum MgaStatus {
  MGA_STATUS_OK = 0,
  MGA_STATUS_NULL_POINTER = 1,
  MGA_STATUS_INVALID_UTF8 = 2,
  MGA_STATUS_INVALID_ARGUMENT = 3,
  MGA_STATUS_OUT_OF_RANGE = 4,
  MGA_STATUS_INVALID_GRAPH = 5,
  MGA_STATUS_PRECONDITION = 6,
  MGA_STATUS_REGIME = 7,
  MGA_STATUS_PARSE = 8,
  MGA_STATUS_INTERNAL = 9,
} MgaStatus;

// Opaque dual graph.
typedef struct MgaCurveGraph MgaCurveGraph;

// Opaque divisor class `aλ − Σ b_i δ_i`.
typedef struct MgaDivisorClass MgaDivisorClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *mga_version(void);

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *mga_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void mga_string_free(char *s);

// `K + αδ` in the chosen model; `alpha` is a "p/q" string.
//
// # Safety
// `alpha` must be a valid C string and `out` a valid pointer.
enum MgaStatus mga_divisor_log_canonical(uint32_t genus,
                                         const char *alpha,
                                         enum MgaModel m,
                                         struct MgaDivisorClass **out);

// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum MgaStatus mga_divisor_from_json(const char *json, struct MgaDivisorClass **out);

// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_divisor_to_json(const struct MgaDivisorClass *d, char **out);

// Pairing with the elliptic-tail ray, as a "p/q" string.
//
// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_divisor_pair_with_ray(const struct MgaDivisorClass *d, char **out);

// F-curve nefness check. `json_out` may be NULL; otherwise it receives the
// full verdict as JSON.
//
// # Safety
// `d` must be a live handle, `verdict` a valid pointer, `json_out` NULL or valid.
enum MgaStatus mga_divisor_nef_check(const struct MgaDivisorClass *d,
                                     enum MgaNef *verdict,
                                     char **json_out);

// # Safety
// `d` must be NULL or a handle not yet freed.
void mga_divisor_free(struct MgaDivisorClass *d);

// Phase report (walls and contracted strata) as JSON.
//
// # Safety
// `out` must be a valid pointer.
enum MgaStatus mga_phase_report(uint32_t genus, enum MgaModel m, char **out);

// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum MgaStatus mga_graph_from_json(const char *json, struct MgaCurveGraph **out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_graph_to_json(const struct MgaCurveGraph *g, char **out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_graph_genus(const struct MgaCurveGraph *g, uint32_t *out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_graph_is_stable(const struct MgaCurveGraph *g, bool *out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_graph_is_pseudostable(const struct MgaCurveGraph *g, bool *out);

// Replace every elliptic tail by a cusp; the result is a new handle.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MgaStatus mga_graph_t_transform(const struct MgaCurveGraph *g, struct MgaCurveGraph **out);

// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum MgaStatus mga_graph_t_equivalent(const struct MgaCurveGraph *a,
                                      const struct MgaCurveGraph *b,
                                      bool *out);

// # Safety
// `g` must be NULL or a handle not yet freed.
void mga_graph_free(struct MgaCurveGraph *g);

// # Safety
// `out` must be a valid pointer.
enum MgaStatus mga_rank_kn(uint32_t genus, uint32_t n, uint64_t *out);

// # Safety
// `out` must be a valid pointer.
enum MgaStatus mga_h0_twisted(uint32_t g_d, uint32_t r, uint32_t n, uint32_t a, uint64_t *out);

// `(e − 1 + a)/e` as a "p/q" string.
//
// # Safety
// `a` must be a valid C string and `out` a valid pointer.
enum MgaStatus mga_coarse_coefficient(uint64_t e, const char *a, char **out);

// Runs the floor-identity sweep; `failures` receives the number of failing cases.
//
// # Safety
// `cases` and `failures` must be valid pointers.
enum MgaStatus mga_floor_sweep(uint64_t m_max,
                               uint64_t e_max,
                               uint64_t q_max,
                               uint64_t *cases,
                               uint64_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGALPHA_H */
