#include "glmkit/kernels.hpp"

#ifdef GLMKIT_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace glmkit::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d vabs(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

inline __m256d vsignbit(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000ULL));
    return _mm256_and_pd(v, mask);
}

} // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_squares(const double* x, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    if (w) {
        for (; i + 4 <= n; i += 4) {
            const __m256d v = _mm256_loadu_pd(x + i);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), v), v, acc);
        }
        double s = hsum(acc);
        for (; i < n; ++i) s += w[i] * x[i] * x[i];
        return s;
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double abs_sum(const double* x, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    if (w) {
        for (; i + 4 <= n; i += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), vabs(_mm256_loadu_pd(x + i)), acc);
        double s = hsum(acc);
        for (; i < n; ++i) s += w[i] * std::abs(x[i]);
        return s;
    }
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, vabs(_mm256_loadu_pd(x + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += std::abs(x[i]);
    return s;
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d mag = _mm256_max_pd(_mm256_sub_pd(vabs(v), vt), zero);
        _mm256_storeu_pd(out + i, _mm256_or_pd(mag, vsignbit(v)));
    }
    for (; i < n; ++i) out[i] = std::copysign(std::max(std::abs(x[i]) - t, 0.0), x[i]);
}

void soft_threshold_w(const double* x, const double* t, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d vt = _mm256_loadu_pd(t + i);
        const __m256d mag = _mm256_max_pd(_mm256_sub_pd(vabs(v), vt), zero);
        _mm256_storeu_pd(out + i, _mm256_or_pd(mag, vsignbit(v)));
    }
    for (; i < n; ++i) out[i] = std::copysign(std::max(std::abs(x[i]) - t[i], 0.0), x[i]);
}

void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(x + i), vlo), vhi));
    for (; i < n; ++i) out[i] = std::min(std::max(x[i], lo), hi);
}

double huber_sum(const double* r, const double* w, double delta, std::size_t n) {
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d half = _mm256_set1_pd(-0.5);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = vabs(_mm256_loadu_pd(r + i));
        const __m256d q = _mm256_min_pd(a, vd);
        // q*(a - q/2)
        __m256d v = _mm256_mul_pd(q, _mm256_fmadd_pd(half, q, a));
        if (w) v = _mm256_mul_pd(v, _mm256_loadu_pd(w + i));
        acc = _mm256_add_pd(acc, v);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double a = std::abs(r[i]);
        const double q = std::min(a, delta);
        const double v = q * (a - 0.5 * q);
        s += w ? w[i] * v : v;
    }
    return s;
}

double pinball_sum(const double* r, const double* w, double q, std::size_t n) {
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d vq1 = _mm256_set1_pd(1.0 - q);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(r + i);
        const __m256d pos = _mm256_max_pd(v, zero);
        const __m256d neg = _mm256_max_pd(_mm256_sub_pd(zero, v), zero);
        __m256d t = _mm256_fmadd_pd(vq, pos, _mm256_mul_pd(vq1, neg));
        if (w) t = _mm256_mul_pd(t, _mm256_loadu_pd(w + i));
        acc = _mm256_add_pd(acc, t);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double v = q * std::max(r[i], 0.0) + (1.0 - q) * std::max(-r[i], 0.0);
        s += w ? w[i] * v : v;
    }
    return s;
}

} // namespace glmkit::kernels::avx2

#endif // GLMKIT_HAVE_AVX2
