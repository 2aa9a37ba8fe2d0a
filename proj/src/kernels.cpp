#include "glmkit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace glmkit::kernels {

namespace {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, const double*, std::size_t);
    double (*abs_sum)(const double*, const double*, std::size_t);
    void (*soft_threshold)(const double*, double, double*, std::size_t);
    void (*soft_threshold_w)(const double*, const double*, double*, std::size_t);
    void (*clamp)(const double*, double, double, double*, std::size_t);
    double (*huber_sum)(const double*, const double*, double, std::size_t);
    double (*pinball_sum)(const double*, const double*, double, std::size_t);
};

constexpr Vtable kScalar = {
    scalar::dot,     scalar::sum_squares,      scalar::abs_sum,
    scalar::soft_threshold, scalar::soft_threshold_w, scalar::clamp,
    scalar::huber_sum, scalar::pinball_sum,
};

#ifdef GLMKIT_HAVE_AVX2
constexpr Vtable kAvx2 = {
    avx2::dot,     avx2::sum_squares,      avx2::abs_sum,
    avx2::soft_threshold, avx2::soft_threshold_w, avx2::clamp,
    avx2::huber_sum, avx2::pinball_sum,
};
#endif

bool avx2_available() {
#ifdef GLMKIT_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend pick_initial() {
    if (const char* env = std::getenv("GLMKIT_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && avx2_available()) return Backend::avx2;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_initial();

const Vtable& table() {
#ifdef GLMKIT_HAVE_AVX2
    if (g_backend == Backend::avx2) return kAvx2;
#endif
    return kScalar;
}

} // namespace

Backend active_backend() { return g_backend; }

std::string backend_name() { return g_backend == Backend::avx2 ? "avx2" : "scalar"; }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available())
        throw std::runtime_error("avx2 kernels not available on this machine");
    g_backend = b;
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }

double sum_squares(const double* x, const double* w, std::size_t n) {
    return table().sum_squares(x, w, n);
}

double abs_sum(const double* x, const double* w, std::size_t n) {
    return table().abs_sum(x, w, n);
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    table().soft_threshold(x, t, out, n);
}

void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n) {
    table().soft_threshold_w(x, t, out, n);
}

void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
    table().clamp(x, lo, hi, out, n);
}

double huber_sum(const double* r, const double* w, double delta, std::size_t n) {
    return table().huber_sum(r, w, delta, n);
}

double pinball_sum(const double* r, const double* w, double q, std::size_t n) {
    return table().pinball_sum(r, w, q, n);
}

} // namespace glmkit::kernels
