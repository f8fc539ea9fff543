#ifndef CMPOLY_CMPOLY_H
#define CMPOLY_CMPOLY_H

/* C interface to the cmpoly library. Functions return a cmpoly_status;
 * on failure cmpoly_last_error() describes the problem (per thread).
 * Strings returned through char** are owned by the caller and released with
 * cmpoly_string_free. Rationals are passed as "p/q" or integer strings. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CMPOLY_API __declspec(dllexport)
#else
#define CMPOLY_API __attribute__((visibility("default")))
#endif

typedef enum cmpoly_status {
  CMPOLY_OK = 0,
  CMPOLY_E_INVALID_ARGUMENT = 1,
  CMPOLY_E_PARSE = 2,
  CMPOLY_E_DOMAIN = 3,
  CMPOLY_E_RANK = 4,
  CMPOLY_E_TOLERANCE = 5,
  CMPOLY_E_LIMIT = 6,
  CMPOLY_E_INTERNAL = 7
} cmpoly_status;

typedef enum cmpoly_verdict {
  CMPOLY_NONNEGATIVE_UP_TO = 0,
  CMPOLY_NEGATIVE_FOUND = 1,
  CMPOLY_INCONCLUSIVE = 2
} cmpoly_verdict;

typedef struct cmpoly_poly cmpoly_poly;

CMPOLY_API const char* cmpoly_version(void);
CMPOLY_API const char* cmpoly_last_error(void);
CMPOLY_API const char* cmpoly_status_name(cmpoly_status s);
CMPOLY_API void cmpoly_string_free(char* s);

/* Default worker count used when a threads argument is 0 (initially 1). */
CMPOLY_API void cmpoly_set_threads(unsigned threads);
CMPOLY_API unsigned cmpoly_get_threads(void);

/* Polynomial handles. */
CMPOLY_API cmpoly_status cmpoly_poly_from_json(const char* json, cmpoly_poly** out);
CMPOLY_API cmpoly_status cmpoly_poly_from_graph_json(const char* json, cmpoly_poly** out);
CMPOLY_API cmpoly_status cmpoly_poly_from_graph_dot(const char* dot, cmpoly_poly** out);
CMPOLY_API cmpoly_status cmpoly_poly_from_matroid_json(const char* json, cmpoly_poly** out);
/* "K_p:<p>", "K<p>", "U24", "AG23" or "E26_QUAT". */
CMPOLY_API cmpoly_status cmpoly_poly_from_builtin(const char* name, cmpoly_poly** out);
CMPOLY_API cmpoly_status cmpoly_poly_elementary(size_t r, size_t n, cmpoly_poly** out);
CMPOLY_API void cmpoly_poly_free(cmpoly_poly* p);
CMPOLY_API size_t cmpoly_poly_nvars(const cmpoly_poly* p);
CMPOLY_API size_t cmpoly_poly_terms(const cmpoly_poly* p);
/* Polynomial JSON including the variable manifest. */
CMPOLY_API cmpoly_status cmpoly_poly_to_json(const cmpoly_poly* p, char** out);
/* Exact value at a point given as a JSON array of rationals; result "p/q". */
CMPOLY_API cmpoly_status cmpoly_poly_evaluate(const cmpoly_poly* p, const char* point_json, char** out);

/* Evidence engine. grid: "default", "extended", "ones" or "file:PATH". */
CMPOLY_API cmpoly_status cmpoly_scan(const cmpoly_poly* p, const char* beta, unsigned N, const char* grid,
                                     uint64_t seed, unsigned threads, cmpoly_verdict* verdict, char** report);
/* tags: comma-separated, may be NULL. */
CMPOLY_API cmpoly_status cmpoly_bisect(const cmpoly_poly* p, const char* lo, const char* hi, unsigned N,
                                       const char* grid, uint64_t seed, const char* tol, const char* tags,
                                       unsigned threads, char** report);
/* points_json: array of points, each an array of positive rationals. */
CMPOLY_API cmpoly_status cmpoly_rayleigh(const cmpoly_poly* p, const char* beta, const char* points_json,
                                         int* holds, char** report);
CMPOLY_API cmpoly_status cmpoly_psd(size_t m, double beta, size_t k, uint64_t seed, size_t restarts,
                                    double* min_eig, char** report);
CMPOLY_API cmpoly_status cmpoly_hpp(const cmpoly_poly* p, size_t attempts, uint64_t seed, int* found,
                                    char** report);

/* Classification: {"no_K3_minor", "series_parallel"} for graphs; inertia and
 * exponent set for quadratic forms (matrix JSON or a quadratic polynomial). */
CMPOLY_API cmpoly_status cmpoly_classify_graph(const char* graph_json, char** report);
CMPOLY_API cmpoly_status cmpoly_classify_quadform(const char* matrix_json, char** report);
CMPOLY_API cmpoly_status cmpoly_classify_poly(const cmpoly_poly* p, char** report);

/* Laplace identities. formula: "E23", "E2n", "series_kernel", "det_m2".
 * params_json keys: beta, x, n, lambda, u, v, A (matrix JSON or "I"),
 * tol, samples, seed, cutoff. */
CMPOLY_API cmpoly_status cmpoly_verify(const char* formula, const char* params_json, int* passed, char** report);
CMPOLY_API cmpoly_status cmpoly_gamma_omega(double alpha, size_t r, size_t d, size_t n, double* out);
CMPOLY_API cmpoly_status cmpoly_heron_kernel(double t1, double t2, double t3, double* out);

#ifdef __cplusplus
}
#endif

#endif
