#ifndef CTXSEM_H
#define CTXSEM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CTXSEM_NORM_L1 1

#define CTXSEM_NORM_L2 2

#define CTXSEM_NORM_INF 0

#define CTXSEM_PRODUCT_POINTWISE 0

#define CTXSEM_PRODUCT_ADDITIVE 1

#define CTXSEM_PRODUCT_TENSOR 2

typedef enum CtxsemStatus {
  CTXSEM_STATUS_OK = 0,
  CTXSEM_STATUS_NULL_ARGUMENT = 1,
  CTXSEM_STATUS_INVALID_UTF8 = 2,
  CTXSEM_STATUS_INVALID_ARGUMENT = 3,
  CTXSEM_STATUS_INPUT_ERROR = 4,
  CTXSEM_STATUS_UNKNOWN_WORD = 5,
  CTXSEM_STATUS_ZERO_ANTECEDENT = 6,
  CTXSEM_STATUS_NOT_POSITIVE = 7,
  CTXSEM_STATUS_MODEL_ERROR = 8,
  CTXSEM_STATUS_PANIC = 9,
} CtxsemStatus;

typedef struct CtxsemDocIndex CtxsemDocIndex;

typedef struct CtxsemLdaModel CtxsemLdaModel;

typedef struct CtxsemTheory CtxsemTheory;

typedef struct CtxsemVector CtxsemVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Error message from the most recent call on this thread, or null if that
// call succeeded. Valid until the next ctxsem call on the same thread.
const char *ctxsem_last_error(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must be null or a string returned by this library.
void ctxsem_string_free(char *s);

// Vector with coordinate `i` on axis `i`.
//
// # Safety
// `coords` must point to `len` doubles; `out` must be writable.
enum CtxsemStatus ctxsem_vector_from_axes(const double *coords,
                                          size_t len,
                                          struct CtxsemVector **out);

// Parses the inline syntax, e.g. `axis:0=1,axis:2=0.5`.
//
// # Safety
// `s` must be a NUL-terminated string; `out` must be writable.
enum CtxsemStatus ctxsem_vector_parse(const char *s, struct CtxsemVector **out);

// Inline rendering of `v`; free with `ctxsem_string_free`.
//
// # Safety
// `v` must be a live vector handle; `out` must be writable.
enum CtxsemStatus ctxsem_vector_to_string(const struct CtxsemVector *v, char **out);

// # Safety
// `v` must be null or a vector handle not yet freed.
void ctxsem_vector_free(struct CtxsemVector *v);

// # Safety
// `v` must be a live vector handle; `out` must be writable.
enum CtxsemStatus ctxsem_vector_coefficient(const struct CtxsemVector *v,
                                            uint64_t axis,
                                            double *out);

// Coordinatewise minimum.
//
// # Safety
// `u` and `v` must be live vector handles; `out` must be writable.
enum CtxsemStatus ctxsem_vector_meet(const struct CtxsemVector *u,
                                     const struct CtxsemVector *v,
                                     struct CtxsemVector **out);

// Coordinatewise maximum.
//
// # Safety
// `u` and `v` must be live vector handles; `out` must be writable.
enum CtxsemStatus ctxsem_vector_join(const struct CtxsemVector *u,
                                     const struct CtxsemVector *v,
                                     struct CtxsemVector **out);

// `kind` is one of the `CTXSEM_NORM_*` constants.
//
// # Safety
// `v` must be a live vector handle; `out` must be writable.
enum CtxsemStatus ctxsem_vector_norm(const struct CtxsemVector *v, uint32_t kind, double *out);

// `‖u ∧ v‖₁ / ‖u‖₁` for positive `u` and `v`.
//
// # Safety
// `u` and `v` must be live vector handles; `out` must be writable.
enum CtxsemStatus ctxsem_vector_entailment(const struct CtxsemVector *u,
                                           const struct CtxsemVector *v,
                                           double *out);

// Theory over a word table (`word<TAB>c0<TAB>c1..` lines). `product` is one
// of the `CTXSEM_PRODUCT_*` constants.
//
// # Safety
// `table` must be a NUL-terminated string; `out` must be writable.
enum CtxsemStatus ctxsem_theory_from_table(const char *table,
                                           uint32_t product,
                                           struct CtxsemTheory **out);

// Degree to which the whitespace-separated string `x` entails `y`.
//
// # Safety
// `theory` must be a live handle; `x` and `y` NUL-terminated strings;
// `out` writable.
enum CtxsemStatus ctxsem_theory_entail(const struct CtxsemTheory *theory,
                                       const char *x,
                                       const char *y,
                                       double *out);

// # Safety
// `t` must be null or a theory handle not yet freed.
void ctxsem_theory_free(struct CtxsemTheory *t);

// Index over a corpus with one document per line.
//
// # Safety
// `corpus` must be a NUL-terminated string; `out` must be writable.
enum CtxsemStatus ctxsem_docindex_new(const char *corpus, struct CtxsemDocIndex **out);

// Fraction of documents containing every word of `x` that also contain
// every word of `y`.
//
// # Safety
// `index` must be a live handle; `x` and `y` NUL-terminated strings;
// `out` writable.
enum CtxsemStatus ctxsem_docindex_entail(const struct CtxsemDocIndex *index,
                                         const char *x,
                                         const char *y,
                                         double *out);

// # Safety
// `index` must be null or an index handle not yet freed.
void ctxsem_docindex_free(struct CtxsemDocIndex *index);

// Loads a model file written by `ctxsem lda-train`.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum CtxsemStatus ctxsem_lda_load(const char *path, struct CtxsemLdaModel **out);

// Parses model text in the `lda-train` file format.
//
// # Safety
// `model` must be a NUL-terminated string; `out` must be writable.
enum CtxsemStatus ctxsem_lda_parse(const char *model, struct CtxsemLdaModel **out);

// Monte Carlo estimate of the probability that a document of
// `doc_length` words contains every word of `words`, from `samples`
// topic draws.
//
// # Safety
// `model` must be a live handle; `words` a NUL-terminated string;
// `estimate` writable; `std_error` null or writable.
enum CtxsemStatus ctxsem_lda_phi(const struct CtxsemLdaModel *model,
                                 const char *words_,
                                 uint64_t doc_length,
                                 size_t samples,
                                 uint64_t seed,
                                 double *estimate,
                                 double *std_error);

// # Safety
// `model` must be a live handle; `x` and `y` NUL-terminated strings;
// `out` writable.
enum CtxsemStatus ctxsem_lda_entail(const struct CtxsemLdaModel *model,
                                    const char *x,
                                    const char *y,
                                    uint64_t doc_length,
                                    size_t samples,
                                    uint64_t seed,
                                    double *out);

// # Safety
// `model` must be null or a model handle not yet freed.
void ctxsem_lda_free(struct CtxsemLdaModel *model);

// Sets `*out` to 1 if `ty` reduces to `target`, else 0. Types use the
// syntax `pi pi^r s o^l o`.
//
// # Safety
// `ty` and `target` must be NUL-terminated strings; `out` writable.
enum CtxsemStatus ctxsem_pregroup_reduces(const char *ty, const char *target, int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CTXSEM_H */
