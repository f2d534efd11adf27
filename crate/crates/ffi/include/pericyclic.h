#ifndef PERICYCLIC_H
#define PERICYCLIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Outcome of an FFI call.
 */
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  PC_STATUS_INVALID_INPUT = 3,
  PC_STATUS_PARSE = 4,
  PC_STATUS_NOT_COMPOSABLE = 5,
  PC_STATUS_PRECONDITION = 6,
  PC_STATUS_RESOURCE_LIMIT = 7,
  PC_STATUS_OUT_OF_TRUNCATION = 8,
  PC_STATUS_PANIC = 9,
} PcStatus;

/**
 * A morphism `E_N → E_M` in canonical form.
 */
typedef struct PcArc PcArc;

/**
 * A point of the topos, as a supernatural number.
 */
typedef struct PcSupernatural PcSupernatural;

/**
 * A balanced-ternary integer.
 */
typedef struct PcTrits PcTrits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *pc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pc_string_free(char *s);

/**
 * Parses a decimal integer.
 *
 * # Safety
 * `decimal` must be a nul-terminated string and `out` a valid pointer.
 */
enum PcStatus pc_trits_from_decimal(const char *decimal, struct PcTrits **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum PcStatus pc_trits_add(const struct PcTrits *a, const struct PcTrits *b, struct PcTrits **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum PcStatus pc_trits_mul(const struct PcTrits *a, const struct PcTrits *b, struct PcTrits **out);

/**
 * Digit list such as `[-1, 1]`, least significant first.
 *
 * # Safety
 * `v` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_trits_digits(const struct PcTrits *v, char **out);

/**
 * # Safety
 * `v` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_trits_to_decimal(const struct PcTrits *v, char **out);

/**
 * # Safety
 * `v` must be null or a handle not yet freed.
 */
void pc_trits_free(struct PcTrits *v);

/**
 * The reduced carry polynomial `s_n`, e.g. `-a0*b0^2 - a0^2*b0`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PcStatus pc_carry_polynomial(size_t n, char **out);

/**
 * Accepts the JSON form `{src_period, dst_period, degree, values}` or a
 * generator such as `face(2,1)` or `cyclic(3)`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum PcStatus pc_arc_parse(const char *spec, struct PcArc **out);

/**
 * `g ∘ f`.
 *
 * # Safety
 * `g`, `f` must be live handles and `out` a valid pointer.
 */
enum PcStatus pc_arc_compose(const struct PcArc *g, const struct PcArc *f, struct PcArc **out);

/**
 * Transpose of a degree-1 map.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_arc_transpose(const struct PcArc *f, struct PcArc **out);

/**
 * # Safety
 * `f` must be a live handle; the outputs must be valid pointers.
 */
enum PcStatus pc_arc_shape(const struct PcArc *f,
                           size_t *src_period,
                           size_t *dst_period,
                           size_t *degree);

/**
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_arc_to_json(const struct PcArc *f, char **out);

/**
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void pc_arc_free(struct PcArc *f);

/**
 * Parses `3*2^inf`, `zhat`, `1` and similar.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum PcStatus pc_supernatural_parse(const char *spec, struct PcSupernatural **out);

/**
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_supernatural_contains(const struct PcSupernatural *s, uint64_t n, bool *out);

/**
 * # Safety
 * `s`, `t` must be live handles and `out` a valid pointer.
 */
enum PcStatus pc_supernatural_equivalent(const struct PcSupernatural *s,
                                         const struct PcSupernatural *t,
                                         bool *out);

/**
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_supernatural_to_string(const struct PcSupernatural *s, char **out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void pc_supernatural_free(struct PcSupernatural *s);

/**
 * Builds the cyclic nerve of a category given as JSON up to `levels` and
 * reports the number of violated relation instances.
 *
 * # Safety
 * `category_json` must be a nul-terminated string and `violations` a valid
 * pointer.
 */
enum PcStatus pc_nerve_validate(const char *category_json, size_t levels, size_t *violations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERICYCLIC_H */
