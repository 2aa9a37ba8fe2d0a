#include "glmkit/adaptive.hpp"

#include "glmkit/errors.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace glmkit {

namespace {

void check_group_cover(const std::vector<std::vector<Index>>& groups, Index rows) {
    if (groups.empty()) throw InvalidInputError("group transform needs groups");
    for (const auto& g : groups)
        for (const Index j : g)
            if (j < 0 || j >= rows) throw InvalidInputError("group index out of range");
}

} // namespace

Index transform_dim(const TransformSpec& spec, Index rows, Index cols) {
    switch (spec.kind) {
        case TransformSpec::Kind::entrywise: return rows * cols;
        case TransformSpec::Kind::group: return static_cast<Index>(spec.groups.size());
        case TransformSpec::Kind::multi_task_rows: return rows;
        case TransformSpec::Kind::singular_values: return std::min(rows, cols);
        case TransformSpec::Kind::tv1_differences: return rows - 1;
    }
    throw InvalidInputError("unknown transform kind");
}

Vector transform(const TransformSpec& spec, const Matrix& beta) {
    switch (spec.kind) {
        case TransformSpec::Kind::entrywise: {
            Vector out(beta.size());
            for (Index i = 0; i < beta.size(); ++i) out(i) = std::abs(beta(i));
            return out;
        }
        case TransformSpec::Kind::group: {
            if (beta.cols() != 1) throw InvalidInputError("group transform needs a vector");
            check_group_cover(spec.groups, beta.rows());
            Vector out(static_cast<Index>(spec.groups.size()));
            for (std::size_t g = 0; g < spec.groups.size(); ++g) {
                double sq = 0.0;
                for (const Index j : spec.groups[g]) sq += beta(j, 0) * beta(j, 0);
                out(static_cast<Index>(g)) = std::sqrt(sq);
            }
            return out;
        }
        case TransformSpec::Kind::multi_task_rows: {
            Vector out(beta.rows());
            for (Index j = 0; j < beta.rows(); ++j) out(j) = beta.row(j).norm();
            return out;
        }
        case TransformSpec::Kind::singular_values: {
            Eigen::JacobiSVD<Matrix> svd(beta);
            return svd.singularValues(); // sorted descending
        }
        case TransformSpec::Kind::tv1_differences: {
            if (beta.cols() != 1) throw InvalidInputError("tv1 transform needs a vector");
            Vector out(beta.rows() - 1);
            for (Index j = 0; j + 1 < beta.rows(); ++j)
                out(j) = std::abs(beta(j + 1, 0) - beta(j, 0));
            return out;
        }
    }
    throw InvalidInputError("unknown transform kind");
}

Vector adaptive_weights(const AdaptiveSpec& spec, const TransformSpec& tspec,
                        const Matrix& init_coef, Index n) {
    if (!(spec.exponent > 0)) throw InvalidInputError("adaptive exponent must be positive");
    const Vector t = transform(tspec, init_coef);
    const double eps =
        spec.perturbation == AdaptiveSpec::Perturbation::one_over_n ? 1.0 / static_cast<double>(n)
                                                                    : 0.0;
    Vector w(t.size());
    for (Index j = 0; j < t.size(); ++j) {
        const double base = t(j) + eps;
        w(j) = base > 0 ? std::pow(base, -spec.exponent) : kInfiniteWeight;
    }
    return w;
}

PenaltySpec weighted_penalty_for(const TransformSpec& tspec, const Vector& weights) {
    PenaltySpec pen;
    pen.pen_val = 1.0;
    pen.weights = weights;
    switch (tspec.kind) {
        case TransformSpec::Kind::entrywise:
            pen.kind = PenaltyKind::lasso;
            break;
        case TransformSpec::Kind::group:
            pen.kind = PenaltyKind::group_lasso;
            pen.groups = tspec.groups;
            break;
        case TransformSpec::Kind::multi_task_rows:
            pen.kind = PenaltyKind::multi_task_lasso;
            break;
        case TransformSpec::Kind::singular_values:
            pen.kind = PenaltyKind::nuclear_norm;
            break;
        case TransformSpec::Kind::tv1_differences:
            pen.kind = PenaltyKind::tv1;
            break;
    }
    return pen;
}

FitResult lla(const LossSpec& loss, const ConcaveGenerator& gen, const TransformSpec& tspec,
              const Dataset& data, const Matrix& init_coef, const SolverConfig& cfg,
              int max_steps, bool intercept) {
    if (max_steps < 1) throw InvalidInputError("lla needs max_steps >= 1");
    const Index cols = coef_columns(loss, data);
    if (init_coef.rows() != data.d() || init_coef.cols() != cols)
        throw InvalidInputError("lla initializer has wrong shape");

    const auto nonconvex_objective = [&](const Matrix& beta, const RowVector& inter) {
        const Vector t = transform(tspec, beta);
        double pen = 0.0;
        for (Index j = 0; j < t.size(); ++j) pen += concave_value(gen, t(j));
        return loss_value(loss, data, beta, inter) + pen;
    };

    Matrix beta = init_coef;
    RowVector inter;
    if (intercept) inter = RowVector::Zero(cols);

    FitResult result;
    result.history.push_back(nonconvex_objective(beta, inter));

    Vector t_prev = transform(tspec, beta);
    int step = 0;
    bool converged = false;
    FitResult sub;
    for (step = 1; step <= max_steps; ++step) {
        Vector w(t_prev.size());
        for (Index j = 0; j < t_prev.size(); ++j) w(j) = concave_derivative(gen, t_prev(j));
        const PenaltySpec subpen = weighted_penalty_for(tspec, w);

        FitResult warm;
        warm.coef = beta;
        warm.intercept = inter;
        sub = fit(loss, subpen, data, cfg, &warm, intercept);
        beta = sub.coef;
        inter = sub.intercept;

        result.history.push_back(nonconvex_objective(beta, inter));

        const Vector t_cur = transform(tspec, beta);
        const double change = (t_cur - t_prev).lpNorm<Eigen::Infinity>();
        const double scale = 1.0 + t_prev.lpNorm<Eigen::Infinity>();
        t_prev = t_cur;
        if (change <= 1e-8 * scale) {
            converged = true;
            break;
        }
    }

    result.coef = std::move(beta);
    result.intercept = std::move(inter);
    result.n_iter = std::min(step, max_steps);
    result.converged = converged;
    result.objective = result.history.back();
    result.backtrack_violation = sub.backtrack_violation;
    return result;
}

double lla_killer_bound(const ConcaveGenerator& gen, const TransformSpec& tspec,
                        const Matrix& init_coef, double klb) {
    if (!(klb >= 0)) throw InvalidInputError("klb must be nonnegative");
    if (tspec.kind == TransformSpec::Kind::tv1_differences)
        throw UnsupportedError(
            "one-step-kill bound needs a transform that vanishes only at zero");
    double a1 = 1.0, b1 = 1.0;
    if (gen.kind == ConcaveGenerator::Kind::mcp) {
        // g'(x) = max(0, lambda - x/gamma), so x <= (gamma/2) lambda implies
        // g'(x) >= lambda/2
        a1 = 0.5;
        b1 = gen.shape / 2.0;
    }
    const Vector t = transform(tspec, init_coef);
    const double tmax = t.size() ? t.lpNorm<Eigen::Infinity>() : 0.0;
    return std::max(tmax / b1, klb / a1);
}

} // namespace glmkit
