#include "glmkit/constraint.hpp"

#include "glmkit/errors.hpp"
#include "glmkit/kernels.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace glmkit {

namespace {

// Threshold for projecting v >= 0 onto {sum z = radius, z >= 0}
// (sort-based; Held/Duchi style).
double simplex_threshold(const Vector& v, double radius) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double cand = (cum - radius) / static_cast<double>(j + 1);
        if (u[j] - cand > 0) tau = cand;
    }
    return tau;
}

Vector project_simplex(const Vector& x, double radius) {
    const double tau = simplex_threshold(x, radius);
    return (x.array() - tau).max(0.0);
}

Vector project_l1(const Vector& x, double radius) {
    if (x.lpNorm<1>() <= radius) return x;
    const double tau = simplex_threshold(x.cwiseAbs(), radius);
    Vector out(x.size());
    kernels::soft_threshold(x.data(), tau, out.data(), static_cast<std::size_t>(x.size()));
    return out;
}

// Pool-adjacent-violators for the nondecreasing projection.
Vector project_isotonic(const Vector& x) {
    const Index d = x.size();
    std::vector<double> value;
    std::vector<Index> count;
    value.reserve(static_cast<std::size_t>(d));
    count.reserve(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
        value.push_back(x(i));
        count.push_back(1);
        while (value.size() > 1 && value[value.size() - 2] >= value.back()) {
            const double merged = (value[value.size() - 2] * static_cast<double>(count[count.size() - 2]) +
                                   value.back() * static_cast<double>(count.back())) /
                                  static_cast<double>(count[count.size() - 2] + count.back());
            count[count.size() - 2] += count.back();
            value[value.size() - 2] = merged;
            value.pop_back();
            count.pop_back();
        }
    }
    Vector out(d);
    Index pos = 0;
    for (std::size_t blk = 0; blk < value.size(); ++blk)
        for (Index c = 0; c < count[blk]; ++c) out(pos++) = value[blk];
    return out;
}

Matrix project_sparse(const Matrix& x, Index k) {
    if (k >= x.size()) return x;
    std::vector<Index> order(static_cast<std::size_t>(x.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
        return std::abs(x(i)) > std::abs(x(j));
    });
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (Index j = 0; j < k; ++j) out(order[static_cast<std::size_t>(j)]) = x(order[static_cast<std::size_t>(j)]);
    return out;
}

Matrix project_rank(const Matrix& x, Index k) {
    if (k >= std::min(x.rows(), x.cols())) return x;
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector sv = svd.singularValues();
    for (Index j = k; j < sv.size(); ++j) sv(j) = 0.0;
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

Vector project_affine(const Matrix& A, const Vector& b, const Vector& x) {
    if (A.rows() != b.size()) throw InvalidInputError("A and b row counts differ");
    if (A.cols() != x.size()) throw InvalidInputError("A column count does not match x");
    // minimum-norm correction x - A^+ (A x - b); exact whenever the system
    // is consistent, including rank-deficient A
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    const Vector residual = A * x - b;
    const Vector z = x - cod.solve(residual);
    if ((A * z - b).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>()))
        throw InfeasibleError("linear equality constraint is infeasible");
    return z;
}

} // namespace

const char* constraint_name(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::positive: return "positive";
        case ConstraintKind::box: return "box";
        case ConstraintKind::simplex: return "simplex";
        case ConstraintKind::l1_ball: return "l1_ball";
        case ConstraintKind::l2_ball: return "l2_ball";
        case ConstraintKind::linear_equality: return "linear_equality";
        case ConstraintKind::isotonic: return "isotonic";
        case ConstraintKind::sparse: return "sparse";
        case ConstraintKind::rank: return "rank";
    }
    return "?";
}

bool is_convex_constraint(ConstraintKind kind) {
    return kind != ConstraintKind::sparse && kind != ConstraintKind::rank;
}

Matrix project(const ConstraintSpec& spec, const Matrix& x) {
    const auto size = static_cast<std::size_t>(x.size());
    switch (spec.kind) {
        case ConstraintKind::positive: {
            Matrix z = x;
            kernels::clamp(x.data(), 0.0, std::numeric_limits<double>::infinity(), z.data(), size);
            return z;
        }
        case ConstraintKind::box: {
            if (spec.lower > spec.upper) throw InvalidInputError("box needs lower <= upper");
            Matrix z = x;
            kernels::clamp(x.data(), spec.lower, spec.upper, z.data(), size);
            return z;
        }
        case ConstraintKind::simplex: {
            if (x.cols() != 1) throw InvalidInputError("simplex projection needs a vector");
            return project_simplex(x.col(0), 1.0);
        }
        case ConstraintKind::l1_ball: {
            if (!(spec.radius > 0)) throw InvalidInputError("ball radius must be positive");
            if (x.cols() != 1) throw InvalidInputError("l1 projection needs a vector");
            return project_l1(x.col(0), spec.radius);
        }
        case ConstraintKind::l2_ball: {
            if (!(spec.radius > 0)) throw InvalidInputError("ball radius must be positive");
            const double norm = x.norm();
            if (norm <= spec.radius) return x;
            return (spec.radius / norm) * x;
        }
        case ConstraintKind::linear_equality: {
            if (x.cols() != 1) throw InvalidInputError("linear equality projection needs a vector");
            return project_affine(spec.A, spec.b, x.col(0));
        }
        case ConstraintKind::isotonic: {
            if (x.cols() != 1) throw InvalidInputError("isotonic projection needs a vector");
            return project_isotonic(x.col(0));
        }
        case ConstraintKind::sparse:
            if (spec.max_card < 1) throw InvalidInputError("sparse needs K >= 1");
            return project_sparse(x, spec.max_card);
        case ConstraintKind::rank:
            if (spec.max_card < 1) throw InvalidInputError("rank needs K >= 1");
            return project_rank(x, spec.max_card);
    }
    throw InvalidInputError("unknown constraint kind");
}

} // namespace glmkit
