#include "glmkit/penalty.hpp"

#include "glmkit/errors.hpp"
#include "glmkit/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>

namespace glmkit {

namespace {

void check_groups(const std::vector<std::vector<Index>>& groups, Index d) {
    if (groups.empty()) throw InvalidInputError("group penalty needs a group structure");
    std::set<Index> seen;
    for (const auto& g : groups) {
        if (g.empty()) throw InvalidInputError("empty group");
        for (const Index j : g) {
            if (j < 0 || j >= d) throw InvalidInputError("group index out of range");
            if (!seen.insert(j).second) throw InvalidInputError("groups must be disjoint");
        }
    }
}

Vector group_default_weights(const std::vector<std::vector<Index>>& groups) {
    Vector w(static_cast<Index>(groups.size()));
    for (std::size_t g = 0; g < groups.size(); ++g)
        w(static_cast<Index>(g)) = std::sqrt(static_cast<double>(groups[g].size()));
    return w;
}

// Blockwise soft-threshold: scale the block toward zero, killing it when its
// norm is below the threshold.
void shrink_block(double* ptr, Index len, Index stride, double threshold) {
    double sq = 0.0;
    for (Index i = 0; i < len; ++i) sq += ptr[i * stride] * ptr[i * stride];
    const double norm = std::sqrt(sq);
    const double scale = norm > threshold ? 1.0 - threshold / norm : 0.0;
    for (Index i = 0; i < len; ++i) ptr[i * stride] *= scale;
}

Matrix nuclear_prox(const Matrix& x, const Vector& w, double threshold) {
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector sv = svd.singularValues();
    for (Index j = 0; j < sv.size(); ++j) sv(j) = std::max(sv(j) - threshold * w(j), 0.0);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

Vector entrywise_weights(const Vector& w, Index rows, Index cols, const char* what) {
    const Index size = rows * cols;
    if (w.size() == 0) return Vector::Ones(size);
    if (w.size() == size) return w;
    if (cols > 1 && w.size() == rows) {
        // per-row weights broadcast across response columns
        Vector out(size);
        for (Index k = 0; k < cols; ++k) out.segment(k * rows, rows) = w;
        return out;
    }
    throw InvalidInputError(std::string(what) + ": weight length does not match coefficients");
}

} // namespace

const char* penalty_name(PenaltyKind kind) {
    switch (kind) {
        case PenaltyKind::lasso: return "lasso";
        case PenaltyKind::ridge: return "ridge";
        case PenaltyKind::generalized_ridge: return "generalized_ridge";
        case PenaltyKind::group_lasso: return "group_lasso";
        case PenaltyKind::multi_task_lasso: return "multi_task_lasso";
        case PenaltyKind::tv1: return "tv1";
        case PenaltyKind::nuclear_norm: return "nuclear_norm";
        case PenaltyKind::elastic_net: return "elastic_net";
        case PenaltyKind::sparse_group_lasso: return "sparse_group_lasso";
        case PenaltyKind::sparse_fused_lasso: return "sparse_fused_lasso";
        case PenaltyKind::infimal_sum: return "infimal_sum";
    }
    return "?";
}

PenaltyKind penalty_kind_from_name(const std::string& name) {
    for (const PenaltyKind k :
         {PenaltyKind::lasso, PenaltyKind::ridge, PenaltyKind::generalized_ridge,
          PenaltyKind::group_lasso, PenaltyKind::multi_task_lasso, PenaltyKind::tv1,
          PenaltyKind::nuclear_norm, PenaltyKind::elastic_net, PenaltyKind::sparse_group_lasso,
          PenaltyKind::sparse_fused_lasso, PenaltyKind::infimal_sum})
        if (name == penalty_name(k)) return k;
    throw InvalidInputError("unknown penalty '" + name + "'");
}

bool is_smooth_penalty(PenaltyKind kind) {
    return kind == PenaltyKind::ridge || kind == PenaltyKind::generalized_ridge;
}

void validate_penalty(const PenaltySpec& spec, Index rows, Index cols) {
    if (spec.pen_val < 0) throw InvalidInputError("pen_val must be nonnegative");
    if ((spec.weights.array() < 0).any())
        throw InvalidInputError("penalty weights must be nonnegative");
    switch (spec.kind) {
        case PenaltyKind::group_lasso:
        case PenaltyKind::sparse_group_lasso:
            if (cols != 1) throw InvalidInputError("group penalties need a vector coefficient");
            check_groups(spec.groups, rows);
            if (spec.weights.size() != 0 &&
                spec.weights.size() != static_cast<Index>(spec.groups.size()))
                throw InvalidInputError("one weight per group required");
            break;
        case PenaltyKind::multi_task_lasso:
            if (spec.weights.size() != 0 && spec.weights.size() != rows)
                throw InvalidInputError("one weight per coefficient row required");
            break;
        case PenaltyKind::tv1:
        case PenaltyKind::sparse_fused_lasso:
            if (cols != 1) throw InvalidInputError("tv penalties need a vector coefficient");
            if (spec.weights.size() != 0 && spec.weights.size() != rows - 1)
                throw InvalidInputError("one weight per difference required");
            break;
        case PenaltyKind::nuclear_norm: {
            const Index m = std::min(rows, cols);
            if (spec.weights.size() != 0) {
                if (spec.weights.size() != m)
                    throw InvalidInputError("one weight per singular value required");
                for (Index j = 0; j + 1 < m; ++j)
                    if (spec.weights(j) > spec.weights(j + 1))
                        throw InvalidInputError("nuclear-norm weights must be non-decreasing");
            }
            break;
        }
        case PenaltyKind::generalized_ridge:
            if (spec.tikhonov.size() == 0 || spec.tikhonov.cols() != rows)
                throw InvalidInputError("generalized_ridge needs a p x d tikhonov matrix");
            break;
        case PenaltyKind::elastic_net:
        case PenaltyKind::lasso:
        case PenaltyKind::ridge:
            entrywise_weights(spec.weights, rows, cols, penalty_name(spec.kind));
            break;
        case PenaltyKind::infimal_sum:
            if (spec.components.empty())
                throw InvalidInputError("infimal_sum needs at least one component");
            for (const auto& c : spec.components) validate_penalty(c, rows, cols);
            break;
    }
    if (spec.kind == PenaltyKind::elastic_net || spec.kind == PenaltyKind::sparse_group_lasso ||
        spec.kind == PenaltyKind::sparse_fused_lasso) {
        if (spec.mix < 0 || spec.mix > 1) throw InvalidInputError("mix must lie in [0,1]");
    }
}

Vector resolve_weights(const PenaltySpec& spec, Index rows, Index cols) {
    switch (spec.kind) {
        case PenaltyKind::lasso:
        case PenaltyKind::ridge:
        case PenaltyKind::elastic_net:
            return entrywise_weights(spec.weights, rows, cols, penalty_name(spec.kind));
        case PenaltyKind::group_lasso:
        case PenaltyKind::sparse_group_lasso:
            return spec.weights.size() ? spec.weights : group_default_weights(spec.groups);
        case PenaltyKind::multi_task_lasso:
            return spec.weights.size() ? spec.weights : Vector::Ones(rows);
        case PenaltyKind::tv1:
        case PenaltyKind::sparse_fused_lasso:
            return spec.weights.size() ? spec.weights : Vector::Ones(rows - 1);
        case PenaltyKind::nuclear_norm:
            return spec.weights.size() ? spec.weights : Vector::Ones(std::min(rows, cols));
        default:
            return spec.weights;
    }
}

double penalty_value(const PenaltySpec& spec, const Matrix& beta) {
    validate_penalty(spec, beta.rows(), beta.cols());
    const double lam = spec.pen_val;
    const auto size = static_cast<std::size_t>(beta.size());

    switch (spec.kind) {
        case PenaltyKind::lasso: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            return lam * kernels::abs_sum(beta.data(), w.data(), size);
        }
        case PenaltyKind::ridge: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            return lam * 0.5 * kernels::sum_squares(beta.data(), w.data(), size);
        }
        case PenaltyKind::generalized_ridge:
            return lam * 0.5 * (spec.tikhonov * beta).squaredNorm();
        case PenaltyKind::group_lasso: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            double total = 0.0;
            for (std::size_t g = 0; g < spec.groups.size(); ++g) {
                double sq = 0.0;
                for (const Index j : spec.groups[g]) sq += beta(j, 0) * beta(j, 0);
                total += w(static_cast<Index>(g)) * std::sqrt(sq);
            }
            return lam * total;
        }
        case PenaltyKind::multi_task_lasso: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            double total = 0.0;
            for (Index j = 0; j < beta.rows(); ++j) total += w(j) * beta.row(j).norm();
            return lam * total;
        }
        case PenaltyKind::tv1: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            double total = 0.0;
            for (Index j = 0; j + 1 < beta.rows(); ++j)
                total += w(j) * std::abs(beta(j + 1, 0) - beta(j, 0));
            return lam * total;
        }
        case PenaltyKind::nuclear_norm: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            Eigen::JacobiSVD<Matrix> svd(beta);
            return lam * w.dot(svd.singularValues());
        }
        case PenaltyKind::elastic_net: {
            const Vector w = resolve_weights(spec, beta.rows(), beta.cols());
            const double l1 = kernels::abs_sum(beta.data(), w.data(), size);
            const double l2 = kernels::sum_squares(beta.data(), w.data(), size);
            return lam * (spec.mix * l1 + (1.0 - spec.mix) * 0.5 * l2);
        }
        case PenaltyKind::sparse_group_lasso: {
            PenaltySpec group = spec;
            group.kind = PenaltyKind::group_lasso;
            group.pen_val = lam * (1.0 - spec.mix);
            const double l1 = kernels::abs_sum(beta.data(), nullptr, size);
            return lam * spec.mix * l1 + penalty_value(group, beta);
        }
        case PenaltyKind::sparse_fused_lasso: {
            PenaltySpec tv = spec;
            tv.kind = PenaltyKind::tv1;
            tv.pen_val = lam * (1.0 - spec.mix);
            const double l1 = kernels::abs_sum(beta.data(), nullptr, size);
            return lam * spec.mix * l1 + penalty_value(tv, beta);
        }
        case PenaltyKind::infimal_sum:
            throw UnsupportedError(
                "infimal_sum value needs an explicit split; use infimal_value");
    }
    throw InvalidInputError("unknown penalty kind");
}

double infimal_value(const PenaltySpec& spec, const std::vector<Matrix>& split) {
    if (spec.kind != PenaltyKind::infimal_sum)
        throw InvalidInputError("infimal_value expects an infimal_sum spec");
    if (split.size() != spec.components.size())
        throw InvalidInputError("split size does not match component count");
    double total = 0.0;
    for (std::size_t j = 0; j < split.size(); ++j)
        total += penalty_value(spec.components[j], split[j]);
    return total;
}

Matrix prox(const PenaltySpec& spec, const Matrix& x, double step) {
    if (!(step > 0)) throw InvalidInputError("prox step must be positive");
    validate_penalty(spec, x.rows(), x.cols());
    const double tau = step * spec.pen_val;
    const auto size = static_cast<std::size_t>(x.size());
    Matrix z = x;

    switch (spec.kind) {
        case PenaltyKind::lasso: {
            if (spec.weights.size() == 0) {
                kernels::soft_threshold(x.data(), tau, z.data(), size);
            } else {
                const Vector t = tau * entrywise_weights(spec.weights, x.rows(), x.cols(), "lasso");
                kernels::soft_threshold_w(x.data(), t.data(), z.data(), size);
            }
            return z;
        }
        case PenaltyKind::ridge: {
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            for (Index i = 0; i < z.size(); ++i) z(i) /= 1.0 + tau * w(i);
            return z;
        }
        case PenaltyKind::generalized_ridge: {
            // (I + tau G'G) z = x, columnwise
            const Matrix& g = spec.tikhonov;
            Matrix m = tau * (g.transpose() * g);
            m.diagonal().array() += 1.0;
            return m.ldlt().solve(x);
        }
        case PenaltyKind::group_lasso: {
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            for (std::size_t g = 0; g < spec.groups.size(); ++g) {
                double sq = 0.0;
                for (const Index j : spec.groups[g]) sq += z(j, 0) * z(j, 0);
                const double norm = std::sqrt(sq);
                const double thr = tau * w(static_cast<Index>(g));
                const double scale = norm > thr ? 1.0 - thr / norm : 0.0;
                for (const Index j : spec.groups[g]) z(j, 0) *= scale;
            }
            return z;
        }
        case PenaltyKind::multi_task_lasso: {
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            for (Index j = 0; j < z.rows(); ++j)
                shrink_block(z.data() + j, z.cols(), z.rows(), tau * w(j));
            return z;
        }
        case PenaltyKind::tv1: {
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            z.col(0) = tv1_prox(x.col(0), tau * w);
            return z;
        }
        case PenaltyKind::nuclear_norm:
            return nuclear_prox(x, resolve_weights(spec, x.rows(), x.cols()), tau);
        case PenaltyKind::elastic_net: {
            const Vector w = entrywise_weights(spec.weights, x.rows(), x.cols(), "elastic_net");
            const Vector t1 = tau * spec.mix * w;
            kernels::soft_threshold_w(x.data(), t1.data(), z.data(), size);
            const double ridge_part = tau * (1.0 - spec.mix);
            for (Index i = 0; i < z.size(); ++i) z(i) /= 1.0 + ridge_part * w(i);
            return z;
        }
        case PenaltyKind::sparse_group_lasso: {
            // exact composition: entrywise soft-threshold, then groupwise
            kernels::soft_threshold(x.data(), tau * spec.mix, z.data(), size);
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            const double gtau = tau * (1.0 - spec.mix);
            for (std::size_t g = 0; g < spec.groups.size(); ++g) {
                double sq = 0.0;
                for (const Index j : spec.groups[g]) sq += z(j, 0) * z(j, 0);
                const double norm = std::sqrt(sq);
                const double thr = gtau * w(static_cast<Index>(g));
                const double scale = norm > thr ? 1.0 - thr / norm : 0.0;
                for (const Index j : spec.groups[g]) z(j, 0) *= scale;
            }
            return z;
        }
        case PenaltyKind::sparse_fused_lasso: {
            // exact composition: tv prox, then entrywise soft-threshold
            const Vector w = resolve_weights(spec, x.rows(), x.cols());
            const Vector fused = tv1_prox(x.col(0), tau * (1.0 - spec.mix) * w);
            kernels::soft_threshold(fused.data(), tau * spec.mix, z.data(), size);
            return z;
        }
        case PenaltyKind::infimal_sum:
            throw UnsupportedError("infimal_sum has no joint prox; use fit_infimal");
    }
    throw InvalidInputError("unknown penalty kind");
}

double concave_value(const ConcaveGenerator& gen, double x) {
    if (x < 0) throw InvalidInputError("concave generator argument must be >= 0");
    const double lam = gen.pen_val;
    if (gen.kind == ConcaveGenerator::Kind::scad) {
        const double a = gen.shape;
        if (!(a > 2)) throw InvalidInputError("SCAD shape must be > 2");
        if (x <= lam) return lam * x;
        if (x <= a * lam)
            return (2.0 * a * lam * x - x * x - lam * lam) / (2.0 * (a - 1.0));
        return (a + 1.0) * lam * lam / 2.0;
    }
    const double gamma = gen.shape;
    if (!(gamma > 1)) throw InvalidInputError("MCP shape must be > 1");
    if (x <= gamma * lam) return lam * x - x * x / (2.0 * gamma);
    return gamma * lam * lam / 2.0;
}

double concave_derivative(const ConcaveGenerator& gen, double x) {
    if (x < 0) throw InvalidInputError("concave generator argument must be >= 0");
    const double lam = gen.pen_val;
    if (gen.kind == ConcaveGenerator::Kind::scad) {
        const double a = gen.shape;
        if (!(a > 2)) throw InvalidInputError("SCAD shape must be > 2");
        if (x <= lam) return lam;
        if (x < a * lam) return (a * lam - x) / (a - 1.0);
        return 0.0;
    }
    const double gamma = gen.shape;
    if (!(gamma > 1)) throw InvalidInputError("MCP shape must be > 1");
    return std::max(0.0, lam - x / gamma);
}

} // namespace glmkit
