#include "supershift_lab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <algorithm>
#include <string>

#include "sslab/bernstein.hpp"
#include "sslab/evolve.hpp"
#include "sslab/regions.hpp"
#include "sslab/runs.hpp"
#include "sslab/sampling.hpp"
#include "sslab/superosc.hpp"
#include "sslab/supershift.hpp"

struct sslab_function {
  sslab::numkernel::FunctionSpec spec;
};

struct sslab_report {
  sslab::runs::RunOutput out;
};

namespace {

using namespace sslab;
using numkernel::PrecisionPolicy;

thread_local std::string g_last_error;

sslab_status map_code(Errc c) {
  switch (c) {
    case Errc::domain: return SSLAB_DOMAIN;
    case Errc::precision: return SSLAB_PRECISION;
    case Errc::singular_time: return SSLAB_SINGULAR_TIME;
    case Errc::ambiguous: return SSLAB_AMBIGUOUS;
    case Errc::glue: return SSLAB_GLUE;
    case Errc::degenerate: return SSLAB_DEGENERATE;
    case Errc::parse: return SSLAB_PARSE;
    case Errc::invalid_argument: return SSLAB_INVALID_ARGUMENT;
    case Errc::overflow: return SSLAB_OVERFLOW;
  }
  return SSLAB_INTERNAL;
}

template <class F>
sslab_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SSLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return SSLAB_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) fail(Errc::invalid_argument, std::string(what) + " is null");
}

PrecisionPolicy policy(sslab_precision p) {
  PrecisionPolicy pol = p.bits > 0 ? PrecisionPolicy::fixed_at(p.bits) : PrecisionPolicy::automatic_with();
  if (p.guard_bits > 0) pol.guard_bits = p.guard_bits;
  pol.validate();
  return pol;
}

std::complex<double> in(sslab_complex z) { return {z.re, z.im}; }
sslab_complex out_of(std::complex<double> z) { return {z.real(), z.imag()}; }

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(const numkernel::Evaluated& e, sslab_complex* out, int* bits_used) {
  *out = out_of(e.value.to_complex());
  if (bits_used) *bits_used = e.bits;
}

}  // namespace

extern "C" {

const char* sslab_version(void) { return SSLAB_VERSION; }
const char* sslab_last_error(void) { return g_last_error.c_str(); }
void sslab_string_free(char* s) { std::free(s); }

const char* sslab_status_string(sslab_status s) {
  switch (s) {
    case SSLAB_OK: return "ok";
    case SSLAB_DOMAIN: return "domain";
    case SSLAB_PRECISION: return "precision";
    case SSLAB_SINGULAR_TIME: return "singular_time";
    case SSLAB_AMBIGUOUS: return "ambiguous";
    case SSLAB_GLUE: return "glue";
    case SSLAB_DEGENERATE: return "degenerate";
    case SSLAB_PARSE: return "parse";
    case SSLAB_INVALID_ARGUMENT: return "invalid_argument";
    case SSLAB_OVERFLOW: return "overflow";
    case SSLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

sslab_status sslab_binomial(unsigned n, unsigned k, char** decimal_out) {
  return guarded([&] {
    need(decimal_out, "decimal_out");
    *decimal_out = dup(numkernel::binomial(n, k).get_str());
  });
}

sslab_status sslab_required_bits(int n, double log2_term_scale, sslab_precision p, int* bits_out) {
  return guarded([&] {
    need(bits_out, "bits_out");
    *bits_out = numkernel::required_bits(n, log2_term_scale, policy(p));
  });
}

sslab_status sslab_function_parse(const char* json, sslab_function** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new sslab_function{numkernel::FunctionSpec::from_json(json)};
  });
}

sslab_status sslab_function_serialize(const sslab_function* f, char** json_out) {
  return guarded([&] {
    need(f, "function");
    need(json_out, "json_out");
    *json_out = dup(f->spec.to_json());
  });
}

void sslab_function_free(sslab_function* f) { delete f; }

sslab_status sslab_function_eval(const sslab_function* f, sslab_complex z, int bits, sslab_complex* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    if (bits < 2) fail(Errc::invalid_argument, "bits must be >= 2");
    *out = out_of(f->spec.eval(Complex(in(z), bits), bits).to_complex());
  });
}

sslab_status sslab_epsilons(const char* family, int n_max, double* out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    if (n_max < 1) fail(Errc::invalid_argument, "n_max must be >= 1");
    auto v = sampling::make_epsilons(sampling::EpsilonSpec::parse(family), n_max);
    std::copy(v.begin(), v.end(), out);
  });
}

sslab_status sslab_frequencies(int n, double eps, double* h_out) {
  return guarded([&] {
    need(h_out, "h_out");
    auto row = sampling::frequencies(n, eps);
    std::copy(row.h.begin(), row.h.end(), h_out);
  });
}

sslab_status sslab_coeff(int n, int nu, double a, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = superosc::coeff(n, nu, a, 128).to_double();
  });
}

sslab_status sslab_eval_sum(int n, double eps, double a, sslab_complex z, sslab_precision p, sslab_complex* out,
                            int* bits_used) {
  return guarded([&] {
    need(out, "out");
    put(superosc::eval_sum(n, eps, a, in(z), policy(p)), out, bits_used);
  });
}

sslab_status sslab_eval_closed(int n, double eps, double a, sslab_complex z, sslab_precision p, sslab_complex* out,
                               int* bits_used) {
  return guarded([&] {
    need(out, "out");
    put(superosc::eval_closed(n, eps, a, in(z), policy(p)), out, bits_used);
  });
}

sslab_status sslab_lagrange_eval(int n, double eps, double a, sslab_complex z, sslab_precision p, sslab_complex* out,
                                 int* bits_used) {
  return guarded([&] {
    need(out, "out");
    put(superosc::lagrange_eval(sampling::frequencies(n, eps), a, in(z), policy(p)), out, bits_used);
  });
}

sslab_status sslab_lagrange_bound(int n, double a, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = superosc::lagrange_bound(n, a, x);
  });
}

sslab_status sslab_bernstein_eval(const sslab_function* psi, int n, double eps, double b_prime, sslab_complex b,
                                  sslab_precision p, sslab_complex* out, int* bits_used) {
  return guarded([&] {
    need(psi, "psi");
    need(out, "out");
    put(bernstein::bernstein_eval(psi->spec, {n, eps, b_prime}, in(b), policy(p)), out, bits_used);
  });
}

sslab_status sslab_newton_form_eval(const sslab_function* psi, int n, double eps, double b_prime, sslab_complex b,
                                    sslab_precision p, sslab_complex* out, int* bits_used) {
  return guarded([&] {
    need(psi, "psi");
    need(out, "out");
    put(bernstein::newton_form_eval(psi->spec, {n, eps, b_prime}, in(b), policy(p)), out, bits_used);
  });
}

sslab_status sslab_moment_poly(int n, int kappa, double c, double eps, sslab_complex z, sslab_precision p,
                               sslab_complex* out) {
  return guarded([&] {
    need(out, "out");
    put(bernstein::moment_poly(n, kappa, c, eps, in(z), policy(p)), out, nullptr);
  });
}

sslab_status sslab_lemniscate_value(double c, sslab_complex z, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = regions::lemniscate_value(c, in(z));
  });
}

sslab_status sslab_classify(double c, sslab_complex z, int resolution, sslab_loop* out) {
  return guarded([&] {
    need(out, "out");
    *out = static_cast<sslab_loop>(regions::classify(c, in(z), resolution));
  });
}

sslab_status sslab_q_constant(const double* c_range, size_t nc, const sslab_complex* k, size_t nk, double* out) {
  return guarded([&] {
    need(c_range, "c_range");
    need(k, "k");
    need(out, "out");
    std::vector<std::complex<double>> pts;
    for (size_t i = 0; i < nk; ++i) pts.push_back(in(k[i]));
    *out = regions::q_constant(std::vector<double>(c_range, c_range + nc), pts);
  });
}

sslab_status sslab_wa_contains(double lo, double hi, sslab_complex z, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = regions::wA_contains(lo, hi, in(z)) ? 1 : 0;
  });
}

sslab_status sslab_function_convolve(const sslab_function* f, double support, int nodes, sslab_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new sslab_function{supershift::convolve(f->spec, support, nodes)};
  });
}

sslab_status sslab_function_primitive(const sslab_function* f, double a0, sslab_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new sslab_function{supershift::primitive(f->spec, a0)};
  });
}

sslab_status sslab_function_multiply_identity(const sslab_function* f, sslab_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new sslab_function{supershift::multiply_by_identity(f->spec)};
  });
}

sslab_status sslab_free_psi(int n, double a, double t, double x, sslab_precision p, sslab_complex* out) {
  return guarded([&] {
    need(out, "out");
    put(evolve::free_psiN({t, x, a, n}, policy(p)), out, nullptr);
  });
}

sslab_status sslab_free_limit(double a, double t, double x, sslab_complex* out) {
  return guarded([&] {
    need(out, "out");
    *out = out_of(evolve::free_limit(a, t, x).to_complex());
  });
}

sslab_status sslab_harmonic_psi(int n, double a, double t, double x, sslab_precision p, sslab_complex* out) {
  return guarded([&] {
    need(out, "out");
    put(evolve::harmonic_psiN({t, x, a, n}, policy(p)), out, nullptr);
  });
}

sslab_status sslab_harmonic_limit(double a, double t, double x, sslab_complex* out) {
  return guarded([&] {
    need(out, "out");
    *out = out_of(evolve::harmonic_limit(a, t, x).to_complex());
  });
}

sslab_status sslab_run(const char* command, const char* config_json, sslab_report** out) {
  return guarded([&] {
    need(command, "command");
    need(out, "out");
    *out = new sslab_report{runs::run_command(command, config_json ? config_json : "{}")};
  });
}

const char* sslab_report_json(const sslab_report* r) { return r ? r->out.json.c_str() : ""; }
const char* sslab_report_csv(const sslab_report* r) { return r ? r->out.csv.c_str() : ""; }
int sslab_report_passed(const sslab_report* r) { return r && r->out.pass ? 1 : 0; }
void sslab_report_free(sslab_report* r) { delete r; }

}  // extern "C"
