/* supershift-lab C API. All strings returned by the library are freed with sslab_string_free. */
#ifndef SUPERSHIFT_LAB_H
#define SUPERSHIFT_LAB_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(SSLAB_BUILDING_LIBRARY)
#define SSLAB_API __declspec(dllexport)
#else
#define SSLAB_API __declspec(dllimport)
#endif
#else
#define SSLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sslab_status {
  SSLAB_OK = 0,
  SSLAB_DOMAIN = 1,
  SSLAB_PRECISION = 2,
  SSLAB_SINGULAR_TIME = 3,
  SSLAB_AMBIGUOUS = 4,
  SSLAB_GLUE = 5,
  SSLAB_DEGENERATE = 6,
  SSLAB_PARSE = 7,
  SSLAB_INVALID_ARGUMENT = 8,
  SSLAB_OVERFLOW = 9,
  SSLAB_INTERNAL = 10
} sslab_status;

typedef struct sslab_complex {
  double re;
  double im;
} sslab_complex;

/* bits <= 0 selects automatic precision; guard_bits <= 0 selects 64 */
typedef struct sslab_precision {
  int bits;
  int guard_bits;
} sslab_precision;

typedef enum sslab_loop { SSLAB_LOOP_LEFT = 0, SSLAB_LOOP_RIGHT = 1, SSLAB_LOOP_OUTSIDE = 2, SSLAB_LOOP_BOUNDARY = 3 } sslab_loop;

typedef struct sslab_function sslab_function;
typedef struct sslab_report sslab_report;

SSLAB_API const char* sslab_version(void);
/* Message of the last failing call on this thread, "" if none. */
SSLAB_API const char* sslab_last_error(void);
SSLAB_API const char* sslab_status_string(sslab_status s);
SSLAB_API void sslab_string_free(char* s);

/* numkernel */
SSLAB_API sslab_status sslab_binomial(unsigned n, unsigned k, char** decimal_out);
/* Working width for an n-term sum whose terms each lose log2_term_scale bits. */
SSLAB_API sslab_status sslab_required_bits(int n, double log2_term_scale, sslab_precision p, int* bits_out);

SSLAB_API sslab_status sslab_function_parse(const char* json, sslab_function** out);
SSLAB_API sslab_status sslab_function_serialize(const sslab_function* f, char** json_out);
SSLAB_API void sslab_function_free(sslab_function* f);
SSLAB_API sslab_status sslab_function_eval(const sslab_function* f, sslab_complex z, int bits, sslab_complex* out);

/* sampling */
SSLAB_API sslab_status sslab_epsilons(const char* family, int n_max, double* out /* n_max entries, ε_1..ε_N */);
SSLAB_API sslab_status sslab_frequencies(int n, double eps, double* h_out /* n+1 entries */);

/* superosc */
SSLAB_API sslab_status sslab_coeff(int n, int nu, double a, double* out);
SSLAB_API sslab_status sslab_eval_sum(int n, double eps, double a, sslab_complex z, sslab_precision p,
                                      sslab_complex* out, int* bits_used);
SSLAB_API sslab_status sslab_eval_closed(int n, double eps, double a, sslab_complex z, sslab_precision p,
                                         sslab_complex* out, int* bits_used);
SSLAB_API sslab_status sslab_lagrange_eval(int n, double eps, double a, sslab_complex z, sslab_precision p,
                                           sslab_complex* out, int* bits_used);
SSLAB_API sslab_status sslab_lagrange_bound(int n, double a, double x, double* out);

/* bernstein */
SSLAB_API sslab_status sslab_bernstein_eval(const sslab_function* psi, int n, double eps, double b_prime,
                                            sslab_complex b, sslab_precision p, sslab_complex* out, int* bits_used);
SSLAB_API sslab_status sslab_newton_form_eval(const sslab_function* psi, int n, double eps, double b_prime,
                                              sslab_complex b, sslab_precision p, sslab_complex* out,
                                              int* bits_used);
SSLAB_API sslab_status sslab_moment_poly(int n, int kappa, double c, double eps, sslab_complex z, sslab_precision p,
                                         sslab_complex* out);

/* regions */
SSLAB_API sslab_status sslab_lemniscate_value(double c, sslab_complex z, double* out);
SSLAB_API sslab_status sslab_classify(double c, sslab_complex z, int resolution, sslab_loop* out);
SSLAB_API sslab_status sslab_q_constant(const double* c_range, size_t nc, const sslab_complex* k, size_t nk,
                                        double* out);
SSLAB_API sslab_status sslab_wa_contains(double lo, double hi, sslab_complex z, int* out);

/* supershift transforms */
SSLAB_API sslab_status sslab_function_convolve(const sslab_function* f, double support, int nodes,
                                               sslab_function** out);
SSLAB_API sslab_status sslab_function_primitive(const sslab_function* f, double a0, sslab_function** out);
SSLAB_API sslab_status sslab_function_multiply_identity(const sslab_function* f, sslab_function** out);

/* evolve */
SSLAB_API sslab_status sslab_free_psi(int n, double a, double t, double x, sslab_precision p, sslab_complex* out);
SSLAB_API sslab_status sslab_free_limit(double a, double t, double x, sslab_complex* out);
SSLAB_API sslab_status sslab_harmonic_psi(int n, double a, double t, double x, sslab_precision p,
                                          sslab_complex* out);
SSLAB_API sslab_status sslab_harmonic_limit(double a, double t, double x, sslab_complex* out);

/* Runs a full experiment. command is one of superosc, bernstein, regions.lemniscate, regions.wa, kantorovich,
   supershift.check, supershift.convolve, supershift.primitive, supershift.multiply, evolve. */
SSLAB_API sslab_status sslab_run(const char* command, const char* config_json, sslab_report** out);
SSLAB_API const char* sslab_report_json(const sslab_report* r);
SSLAB_API const char* sslab_report_csv(const sslab_report* r);
SSLAB_API int sslab_report_passed(const sslab_report* r);
SSLAB_API void sslab_report_free(sslab_report* r);

#ifdef __cplusplus
}
#endif

#endif
