#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the loss, penalty and constraint layers.
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected once at startup (override with GLMKIT_KERNELS=scalar|avx2).
// Transcendental loops (exp/log in the logistic and poisson losses) stay
// scalar and are not part of this module.
//
// Weighted kernels accept w == nullptr, meaning unit weights.

namespace glmkit::kernels {

double dot(const double* x, const double* y, std::size_t n);

// sum_i w_i * x_i^2
double sum_squares(const double* x, const double* w, std::size_t n);

// sum_i w_i * |x_i|
double abs_sum(const double* x, const double* w, std::size_t n);

// out_i = sign(x_i) * max(|x_i| - t, 0)
void soft_threshold(const double* x, double t, double* out, std::size_t n);

// out_i = sign(x_i) * max(|x_i| - t_i, 0)
void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n);

// out_i = min(max(x_i, lo), hi)
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);

// sum_i w_i * huber_delta(r_i) with huber(r) = r^2/2 for |r| <= delta,
// delta*(|r| - delta/2) beyond the knot.
double huber_sum(const double* r, const double* w, double delta, std::size_t n);

// sum_i w_i * (q * max(r_i,0) + (1-q) * max(-r_i,0))
double pinball_sum(const double* r, const double* w, double q, std::size_t n);

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string backend_name();
// Force a backend (tests use this to cross-check variants). Throws if the
// requested backend is unavailable on this machine.
void set_backend(Backend b);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double sum_squares(const double* x, const double* w, std::size_t n);
double abs_sum(const double* x, const double* w, std::size_t n);
void soft_threshold(const double* x, double t, double* out, std::size_t n);
void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n);
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);
double huber_sum(const double* r, const double* w, double delta, std::size_t n);
double pinball_sum(const double* r, const double* w, double q, std::size_t n);
} // namespace scalar

#ifdef GLMKIT_HAVE_AVX2
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double sum_squares(const double* x, const double* w, std::size_t n);
double abs_sum(const double* x, const double* w, std::size_t n);
void soft_threshold(const double* x, double t, double* out, std::size_t n);
void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n);
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);
double huber_sum(const double* r, const double* w, double delta, std::size_t n);
double pinball_sum(const double* r, const double* w, double q, std::size_t n);
} // namespace avx2
#endif

} // namespace glmkit::kernels
