#include "glmkit/loss.hpp"

#include "glmkit/errors.hpp"
#include "glmkit/kernels.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace glmkit {

namespace {

constexpr double kLogitClip = 1e-10;

double stable_log1pexp(double z) {
    // log(1 + e^z) without overflow
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void validate_spec(const LossSpec& spec) {
    if (spec.kind == LossKind::huber && !(spec.huber_knot > 0))
        throw InvalidInputError("huber knot must be positive");
    if (spec.kind == LossKind::quantile) {
        if (!(spec.quantile_level > 0 && spec.quantile_level < 1))
            throw InvalidInputError("quantile level must lie in (0,1)");
        if (spec.quantile_smoothing < 0)
            throw InvalidInputError("quantile smoothing bandwidth must be >= 0");
    }
    if (spec.kind == LossKind::multinomial && spec.class_count < 2)
        throw InvalidInputError("multinomial needs class_count >= 2");
}

bool is_integral(double v) { return v == std::floor(v); }

// Smoothed pinball loss (Moreau envelope of the tilted absolute value with
// bandwidth h): quadratic of curvature 1/h near zero, linear tails.
double pinball_smoothed(double r, double q, double h) {
    if (r > h * q) return q * r - 0.5 * h * q * q;
    if (r < -h * (1.0 - q)) return -(1.0 - q) * r - 0.5 * h * (1.0 - q) * (1.0 - q);
    return 0.5 * r * r / h;
}

double pinball_smoothed_deriv(double r, double q, double h) {
    if (r > h * q) return q;
    if (r < -h * (1.0 - q)) return -(1.0 - q);
    return r / h;
}

double elem_value(const LossSpec& spec, double z, double y) {
    switch (spec.kind) {
        case LossKind::least_squares: {
            const double r = y - z;
            return 0.5 * r * r;
        }
        case LossKind::logistic:
            return stable_log1pexp(z) - y * z;
        case LossKind::poisson:
            return std::exp(z) - z * y;
        case LossKind::huber: {
            const double a = std::abs(y - z);
            const double q = std::min(a, spec.huber_knot);
            return q * (a - 0.5 * q);
        }
        case LossKind::quantile: {
            const double r = y - z;
            const double q = spec.quantile_level;
            if (spec.quantile_smoothing > 0)
                return pinball_smoothed(r, q, spec.quantile_smoothing);
            return q * std::max(r, 0.0) + (1.0 - q) * std::max(-r, 0.0);
        }
        case LossKind::squared_hinge: {
            const double m = std::max(0.0, 1.0 - y * z);
            return 0.5 * m * m;
        }
        case LossKind::multinomial:
            break;
    }
    throw UnsupportedError("elementwise value undefined for this loss");
}

// Derivative with respect to the linear predictor z.
double elem_deriv(const LossSpec& spec, double z, double y) {
    switch (spec.kind) {
        case LossKind::least_squares:
            return z - y;
        case LossKind::logistic:
            return sigmoid(z) - y;
        case LossKind::poisson:
            return std::exp(z) - y;
        case LossKind::huber: {
            const double r = y - z;
            return -std::clamp(r, -spec.huber_knot, spec.huber_knot);
        }
        case LossKind::quantile: {
            const double r = y - z;
            const double q = spec.quantile_level;
            if (spec.quantile_smoothing > 0)
                return -pinball_smoothed_deriv(r, q, spec.quantile_smoothing);
            if (r > 0) return -q;
            if (r < 0) return 1.0 - q;
            return 0.0;
        }
        case LossKind::squared_hinge:
            return -y * std::max(0.0, 1.0 - y * z);
        case LossKind::multinomial:
            break;
    }
    throw UnsupportedError("elementwise derivative undefined for this loss");
}

struct CoreEval {
    double value = 0.0;
    Matrix gz; // d(value)/dZ, empty unless requested
};

// One pass over Z = offsets + X beta + intercept: value, optionally the
// gradient with respect to Z (already scaled by s_i/n).
CoreEval core_eval(const LossSpec& spec, const Dataset& data, const Matrix& beta,
                   const RowVector& inter, bool want_grad) {
    check_response(spec, data);
    if (!beta.allFinite() || (inter.size() > 0 && !inter.allFinite()))
        throw InvalidInputError("non-finite coefficients");
    const Index n = data.n();
    const Matrix z = linear_predictor(data, beta, inter);
    const Vector s = effective_weights(data);
    const double* w = data.has_weights() ? s.data() : nullptr;
    const auto nn = static_cast<std::size_t>(n);

    CoreEval out;
    if (want_grad) out.gz.resize(n, z.cols());

    if (spec.kind == LossKind::multinomial) {
        if (z.cols() != spec.class_count)
            throw InvalidInputError("coefficient columns must equal class_count");
        for (Index i = 0; i < n; ++i) {
            const double zmax = z.row(i).maxCoeff();
            double se = 0.0;
            for (Index k = 0; k < z.cols(); ++k) se += std::exp(z(i, k) - zmax);
            const double lse = zmax + std::log(se);
            const auto label = static_cast<Index>(data.y(i, 0));
            out.value += s(i) * (lse - z(i, label));
            if (want_grad) {
                for (Index k = 0; k < z.cols(); ++k)
                    out.gz(i, k) = s(i) * std::exp(z(i, k) - zmax) / se;
                out.gz(i, label) -= s(i);
            }
        }
    } else {
        switch (spec.kind) {
            case LossKind::least_squares:
                for (Index k = 0; k < z.cols(); ++k) {
                    const Vector r = data.y.col(k) - z.col(k);
                    out.value += 0.5 * kernels::sum_squares(r.data(), w, nn);
                }
                break;
            case LossKind::huber:
                for (Index k = 0; k < z.cols(); ++k) {
                    const Vector r = data.y.col(k) - z.col(k);
                    out.value += kernels::huber_sum(r.data(), w, spec.huber_knot, nn);
                }
                break;
            case LossKind::quantile:
                if (spec.quantile_smoothing == 0.0) {
                    for (Index k = 0; k < z.cols(); ++k) {
                        const Vector r = data.y.col(k) - z.col(k);
                        out.value += kernels::pinball_sum(r.data(), w, spec.quantile_level, nn);
                    }
                    break;
                }
                [[fallthrough]];
            default:
                for (Index k = 0; k < z.cols(); ++k)
                    for (Index i = 0; i < n; ++i)
                        out.value += s(i) * elem_value(spec, z(i, k), data.y(i, k));
                break;
        }
        if (want_grad) {
            for (Index k = 0; k < z.cols(); ++k)
                for (Index i = 0; i < n; ++i)
                    out.gz(i, k) = s(i) * elem_deriv(spec, z(i, k), data.y(i, k));
        }
    }
    out.value /= static_cast<double>(n);
    if (want_grad) out.gz /= static_cast<double>(n);
    return out;
}

// Weighted q-quantile: smallest value whose cumulative weight reaches q*W.
double weighted_quantile(const Vector& v, const Vector& w, double q) {
    std::vector<Index> order(static_cast<std::size_t>(v.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return v(a) < v(b); });
    const double target = q * w.sum();
    double cum = 0.0;
    for (const Index i : order) {
        cum += w(i);
        if (cum >= target) return v(i);
    }
    return v(order.back());
}

} // namespace

const char* loss_name(LossKind kind) {
    switch (kind) {
        case LossKind::least_squares: return "least_squares";
        case LossKind::logistic: return "logistic";
        case LossKind::multinomial: return "multinomial";
        case LossKind::poisson: return "poisson";
        case LossKind::huber: return "huber";
        case LossKind::quantile: return "quantile";
        case LossKind::squared_hinge: return "squared_hinge";
    }
    return "?";
}

LossKind loss_kind_from_name(const std::string& name) {
    for (const LossKind k :
         {LossKind::least_squares, LossKind::logistic, LossKind::multinomial, LossKind::poisson,
          LossKind::huber, LossKind::quantile, LossKind::squared_hinge})
        if (name == loss_name(k)) return k;
    throw InvalidInputError("unknown loss '" + name + "'");
}

bool is_smooth(const LossSpec& spec) {
    return !(spec.kind == LossKind::quantile && spec.quantile_smoothing == 0.0);
}

Index coef_columns(const LossSpec& spec, const Dataset& data) {
    if (spec.kind == LossKind::multinomial) return spec.class_count;
    return data.y.cols();
}

void check_response(const LossSpec& spec, const Dataset& data) {
    validate_spec(spec);
    const auto& y = data.y;
    switch (spec.kind) {
        case LossKind::logistic:
            if (((y.array() != 0.0) && (y.array() != 1.0)).any())
                throw InvalidInputError("logistic responses must be 0 or 1");
            break;
        case LossKind::multinomial: {
            if (y.cols() != 1)
                throw InvalidInputError("multinomial expects a single label column");
            for (Index i = 0; i < y.rows(); ++i) {
                const double v = y(i, 0);
                if (!is_integral(v) || v < 0 || v >= spec.class_count)
                    throw InvalidInputError("multinomial labels must lie in {0,...,K-1}");
            }
            break;
        }
        case LossKind::poisson:
            if ((y.array() < 0).any())
                throw InvalidInputError("poisson responses must be nonnegative");
            break;
        case LossKind::squared_hinge:
            if (((y.array() != -1.0) && (y.array() != 1.0)).any())
                throw InvalidInputError("squared hinge responses must be -1 or 1");
            break;
        default:
            break;
    }
}

Matrix linear_predictor(const Dataset& data, const Matrix& beta, const RowVector& inter) {
    if (beta.rows() != data.d())
        throw InvalidInputError("coefficient rows do not match number of covariates");
    Matrix z = data.X * beta;
    if (inter.size() > 0) {
        if (inter.size() != z.cols())
            throw InvalidInputError("intercept length does not match coefficient columns");
        z.rowwise() += inter;
    }
    if (data.has_offsets()) z.colwise() += data.offsets;
    return z;
}

double loss_value(const LossSpec& spec, const Dataset& data, const Matrix& beta,
                  const RowVector& inter) {
    return core_eval(spec, data, beta, inter, false).value;
}

std::pair<Matrix, RowVector> loss_gradient(const LossSpec& spec, const Dataset& data,
                                           const Matrix& beta, const RowVector& inter) {
    auto eval = loss_value_and_gradient(spec, data, beta, inter);
    return {std::move(eval.grad_beta), std::move(eval.grad_inter)};
}

LossEval loss_value_and_gradient(const LossSpec& spec, const Dataset& data, const Matrix& beta,
                                 const RowVector& inter) {
    CoreEval core = core_eval(spec, data, beta, inter, true);
    LossEval out;
    out.value = core.value;
    out.grad_beta = data.X.transpose() * core.gz;
    if (inter.size() > 0) out.grad_inter = core.gz.colwise().sum();
    return out;
}

std::optional<double> lipschitz_constant(const LossSpec& spec, const Dataset& data,
                                         bool with_intercept) {
    validate_spec(spec);
    double curvature = 0.0;
    switch (spec.kind) {
        case LossKind::least_squares:
        case LossKind::huber:
        case LossKind::squared_hinge:
            curvature = 1.0;
            break;
        case LossKind::logistic:
            curvature = 0.25;
            break;
        case LossKind::multinomial:
            curvature = 0.5;
            break;
        case LossKind::quantile:
            if (spec.quantile_smoothing > 0) {
                curvature = 1.0 / spec.quantile_smoothing;
                break;
            }
            return std::nullopt;
        case LossKind::poisson:
            return std::nullopt;
    }

    const Index n = data.n();
    Matrix xt(n, data.d() + (with_intercept ? 1 : 0));
    xt.leftCols(data.d()) = data.X;
    if (with_intercept) xt.col(data.d()).setOnes();
    if (data.has_weights()) {
        const Vector s = effective_weights(data);
        xt.array().colwise() *= s.array().sqrt();
    }
    Eigen::BDCSVD<Matrix> svd(xt);
    const double smax = svd.singularValues()(0);
    return curvature * smax * smax / static_cast<double>(n);
}

RowVector intercept_at_zero(const LossSpec& spec, const Dataset& data) {
    check_response(spec, data);
    const Index n = data.n();
    const Vector s = effective_weights(data);
    const double sw = static_cast<double>(n);
    const Vector o = data.has_offsets() ? data.offsets : Vector::Zero(n);
    const bool offset_free = !data.has_offsets();

    if (spec.kind == LossKind::multinomial) {
        // softmax is shift-invariant, so offsets drop out
        Vector counts = Vector::Zero(spec.class_count);
        for (Index i = 0; i < n; ++i) counts(static_cast<Index>(data.y(i, 0))) += s(i);
        RowVector u(spec.class_count);
        for (Index k = 0; k < spec.class_count; ++k) {
            if (counts(k) <= 0)
                throw UnboundedError("multinomial class " + std::to_string(k) +
                                     " absent: intercept unbounded");
            u(k) = std::log(counts(k) / sw);
        }
        return u;
    }

    const Index K = data.y.cols();
    RowVector u(K);
    for (Index k = 0; k < K; ++k) {
        const Vector yk = data.y.col(k) - o;
        bool done = true;
        switch (spec.kind) {
            case LossKind::least_squares:
                u(k) = s.dot(yk) / sw;
                break;
            case LossKind::logistic: {
                const double ymin = data.y.col(k).minCoeff();
                const double ymax = data.y.col(k).maxCoeff();
                if (ymin == ymax)
                    throw UnboundedError("logistic intercept unbounded: single-class response");
                if (offset_free) {
                    const double p =
                        std::clamp(s.dot(data.y.col(k)) / sw, kLogitClip, 1.0 - kLogitClip);
                    u(k) = std::log(p / (1.0 - p));
                } else {
                    done = false;
                }
                break;
            }
            case LossKind::poisson: {
                const double num = s.dot(data.y.col(k));
                if (num <= 0)
                    throw UnboundedError("poisson intercept unbounded: all counts zero");
                double den = 0.0;
                for (Index i = 0; i < n; ++i) den += s(i) * std::exp(o(i));
                u(k) = std::log(num / den);
                break;
            }
            case LossKind::quantile:
                if (spec.quantile_smoothing == 0.0)
                    u(k) = weighted_quantile(yk, s, spec.quantile_level);
                else
                    done = false;
                break;
            default:
                done = false;
                break;
        }
        if (done) continue;

        // 1-D numeric minimization for huber, squared hinge, smoothed
        // quantile and logistic-with-offsets; all convex in u, so bisection
        // on the (nondecreasing) derivative pins the stationary point far
        // tighter than value-based search.
        const Index kk = k;
        const auto df = [&](double v) {
            double total = 0.0;
            for (Index i = 0; i < n; ++i)
                total += s(i) * elem_deriv(spec, o(i) + v, data.y(i, kk));
            return total / sw;
        };
        const double spread = (data.y.col(k).maxCoeff() - data.y.col(k).minCoeff()) +
                              (o.maxCoeff() - o.minCoeff());
        const double center = s.dot(yk) / sw;
        double half = std::max(4.0, 2.0 * spread + 4.0);
        double lo = center - half, hi = center + half;
        int guard = 0;
        while (df(lo) > 0 && ++guard < 100) lo -= half;
        guard = 0;
        while (df(hi) < 0 && ++guard < 100) hi += half;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi));
             ++it) {
            const double mid = 0.5 * (lo + hi);
            (df(mid) < 0 ? lo : hi) = mid;
        }
        u(k) = 0.5 * (lo + hi);
    }
    return u;
}

} // namespace glmkit
