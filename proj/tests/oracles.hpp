#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// finite differences for gradients, subgradient descent and grid search for
// proximal operators, exact enumeration for the small projections, and a
// normal-equations solve for OLS.

#include "glmkit/penalty.hpp"
#include "glmkit/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

using glmkit::Index;
using glmkit::Matrix;
using glmkit::RowVector;
using glmkit::Vector;

// Central finite differences of a scalar function of a vector.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double h = 1e-6) {
    Vector g(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

inline double prox_objective(const glmkit::PenaltySpec& spec, const Matrix& x, const Matrix& z,
                             double step) {
    return 0.5 * (x - z).squaredNorm() / step + glmkit::penalty_value(spec, z);
}

// Hand-derived subgradient of the penalty at z (a valid selection), written
// independently of the library's prox implementations.
inline Matrix penalty_subgradient(const glmkit::PenaltySpec& spec, const Matrix& z) {
    using glmkit::PenaltyKind;
    const double lam = spec.pen_val;
    const Vector w = glmkit::resolve_weights(spec, z.rows(), z.cols());
    Matrix g = Matrix::Zero(z.rows(), z.cols());
    const auto sign = [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); };

    switch (spec.kind) {
        case PenaltyKind::lasso:
            for (Index i = 0; i < z.size(); ++i) g(i) = lam * w(i) * sign(z(i));
            return g;
        case PenaltyKind::ridge:
            for (Index i = 0; i < z.size(); ++i) g(i) = lam * w(i) * z(i);
            return g;
        case PenaltyKind::generalized_ridge:
            return lam * (spec.tikhonov.transpose() * (spec.tikhonov * z));
        case PenaltyKind::group_lasso: {
            for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
                double nrm = 0.0;
                for (const Index j : spec.groups[gi]) nrm += z(j, 0) * z(j, 0);
                nrm = std::sqrt(nrm);
                if (nrm > 0)
                    for (const Index j : spec.groups[gi])
                        g(j, 0) = lam * w(static_cast<Index>(gi)) * z(j, 0) / nrm;
            }
            return g;
        }
        case PenaltyKind::multi_task_lasso: {
            for (Index j = 0; j < z.rows(); ++j) {
                const double nrm = z.row(j).norm();
                if (nrm > 0) g.row(j) = lam * w(j) * z.row(j) / nrm;
            }
            return g;
        }
        case PenaltyKind::tv1: {
            for (Index j = 0; j + 1 < z.rows(); ++j) {
                const double s = sign(z(j + 1, 0) - z(j, 0));
                g(j + 1, 0) += lam * w(j) * s;
                g(j, 0) -= lam * w(j) * s;
            }
            return g;
        }
        case PenaltyKind::nuclear_norm: {
            Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
            return lam * (svd.matrixU() * w.head(svd.singularValues().size()).asDiagonal() *
                          svd.matrixV().transpose());
        }
        case PenaltyKind::elastic_net: {
            for (Index i = 0; i < z.size(); ++i)
                g(i) = lam * w(i) * (spec.mix * sign(z(i)) + (1.0 - spec.mix) * z(i));
            return g;
        }
        case PenaltyKind::sparse_group_lasso: {
            glmkit::PenaltySpec grp = spec;
            grp.kind = PenaltyKind::group_lasso;
            grp.pen_val = lam * (1.0 - spec.mix);
            g = penalty_subgradient(grp, z);
            for (Index i = 0; i < z.size(); ++i) g(i) += lam * spec.mix * sign(z(i));
            return g;
        }
        case PenaltyKind::sparse_fused_lasso: {
            glmkit::PenaltySpec tv = spec;
            tv.kind = PenaltyKind::tv1;
            tv.pen_val = lam * (1.0 - spec.mix);
            g = penalty_subgradient(tv, z);
            for (Index i = 0; i < z.size(); ++i) g(i) += lam * spec.mix * sign(z(i));
            return g;
        }
        default:
            throw std::runtime_error("no oracle subgradient for this kind");
    }
}

// Best candidate for argmin of the prox objective by subgradient descent
// with the 1/(mu t) schedule (the quadratic term makes the objective
// strongly convex). Returns the best point seen.
inline Matrix prox_oracle(const glmkit::PenaltySpec& spec, const Matrix& x, double step,
                          int iters = 8000) {
    Matrix z = x;
    Matrix best = z;
    double best_val = prox_objective(spec, x, z, step);
    const double mu = 1.0 / step;
    for (int t = 1; t <= iters; ++t) {
        const Matrix sub = (z - x) / step + penalty_subgradient(spec, z);
        const double eta = 2.0 / (mu * (static_cast<double>(t) + 2.0));
        z -= eta * sub;
        const double val = prox_objective(spec, x, z, step);
        if (val < best_val) {
            best_val = val;
            best = z;
        }
    }
    return best;
}

// Dense 2-D grid minimization with local refinement.
inline Vector grid_minimize_2d(const std::function<double(double, double)>& f, double lo,
                               double hi) {
    double ba = 0, bb = 0, bv = std::numeric_limits<double>::infinity();
    double a0 = lo, a1 = hi, b0 = lo, b1 = hi;
    for (int round = 0; round < 8; ++round) {
        const int m = 60;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                const double a = a0 + (a1 - a0) * i / m;
                const double b = b0 + (b1 - b0) * j / m;
                const double v = f(a, b);
                if (v < bv) {
                    bv = v;
                    ba = a;
                    bb = b;
                }
            }
        const double wa = (a1 - a0) / m, wb = (b1 - b0) / m;
        a0 = ba - 2 * wa;
        a1 = ba + 2 * wa;
        b0 = bb - 2 * wb;
        b1 = bb + 2 * wb;
    }
    Vector out(2);
    out << ba, bb;
    return out;
}

// Exact projection onto the probability simplex by KKT support enumeration.
inline Vector simplex_oracle(const Vector& x) {
    const Index d = x.size();
    Vector best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<Index> support;
        for (Index j = 0; j < d; ++j)
            if (mask & (1u << j)) support.push_back(j);
        double sum = 0.0;
        for (const Index j : support) sum += x(j);
        const double shift = (sum - 1.0) / static_cast<double>(support.size());
        Vector z = Vector::Zero(d);
        bool feasible = true;
        for (const Index j : support) {
            z(j) = x(j) - shift;
            if (z(j) < 0) feasible = false;
        }
        if (!feasible) continue;
        const double dist = (z - x).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = z;
        }
    }
    return best;
}

// Exact isotonic projection by enumerating partitions into blocks (the
// solution is blockwise means); feasible = nondecreasing block means.
inline Vector isotonic_oracle(const Vector& x) {
    const Index d = x.size();
    Vector best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (unsigned cuts = 0; cuts < (1u << (d - 1)); ++cuts) {
        Vector z(d);
        Index start = 0;
        double prev_mean = -std::numeric_limits<double>::infinity();
        bool feasible = true;
        for (Index i = 0; i < d; ++i) {
            const bool boundary = i == d - 1 || (cuts & (1u << i));
            if (!boundary) continue;
            const Index len = i - start + 1;
            const double mean = x.segment(start, len).mean();
            if (mean < prev_mean) {
                feasible = false;
                break;
            }
            z.segment(start, len).setConstant(mean);
            prev_mean = mean;
            start = i + 1;
        }
        if (!feasible) continue;
        const double dist = (z - x).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = z;
        }
    }
    return best;
}

inline Vector ols_oracle(const Matrix& X, const Vector& y, bool intercept) {
    const Index n = X.rows();
    Matrix xt(n, X.cols() + (intercept ? 1 : 0));
    xt.leftCols(X.cols()) = X;
    if (intercept) xt.col(X.cols()).setOnes();
    return (xt.transpose() * xt).ldlt().solve(xt.transpose() * y);
}

// 1-D golden-section minimizer for convex functions.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12 * (1.0 + std::abs(b) + std::abs(a))) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace oracles
