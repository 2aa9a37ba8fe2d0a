#include "glmkit/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace glmkit::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum_squares(const double* x, const double* w, std::size_t n) {
    double acc = 0.0;
    if (w) {
        for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * x[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    }
    return acc;
}

double abs_sum(const double* x, const double* w, std::size_t n) {
    double acc = 0.0;
    if (w) {
        for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::abs(x[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i]);
    }
    return acc;
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::max(std::abs(x[i]) - t, 0.0);
        out[i] = std::copysign(a, x[i]);
    }
}

void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::max(std::abs(x[i]) - t[i], 0.0);
        out[i] = std::copysign(a, x[i]);
    }
}

void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(x[i], lo), hi);
}

double huber_sum(const double* r, const double* w, double delta, std::size_t n) {
    // huber(r) = q*(|r| - q/2) with q = min(|r|, delta): equals r^2/2 inside
    // the knot and delta*(|r| - delta/2) outside.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(r[i]);
        const double q = std::min(a, delta);
        const double v = q * (a - 0.5 * q);
        acc += w ? w[i] * v : v;
    }
    return acc;
}

double pinball_sum(const double* r, const double* w, double q, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = q * std::max(r[i], 0.0) + (1.0 - q) * std::max(-r[i], 0.0);
        acc += w ? w[i] * v : v;
    }
    return acc;
}

} // namespace glmkit::kernels::scalar
