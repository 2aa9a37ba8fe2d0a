#include "glmkit/solver.hpp"

#include "glmkit/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <optional>

namespace glmkit {

namespace {

struct Point {
    Matrix beta;
    RowVector inter;

    Point operator-(const Point& o) const {
        Point p{beta - o.beta, inter.size() ? RowVector(inter - o.inter) : RowVector{}};
        return p;
    }
    double dot(const Point& o) const {
        double v = beta.cwiseProduct(o.beta).sum();
        if (inter.size()) v += inter.cwiseProduct(o.inter).sum();
        return v;
    }
    double squared_norm() const { return dot(*this); }
    double inf_norm() const {
        double v = beta.size() ? beta.cwiseAbs().maxCoeff() : 0.0;
        if (inter.size()) v = std::max(v, inter.cwiseAbs().maxCoeff());
        return v;
    }
};

struct SmoothEval {
    double value;
    Point grad;
};

// Composite problem handed to the FISTA core: smooth part (loss plus any
// smooth penalty), prox of the nonsmooth part, and its value for objective
// reporting.
struct ProxProblem {
    std::function<double(const Point&)> smooth_value;
    std::function<SmoothEval(const Point&)> smooth_eval;
    std::function<Matrix(const Matrix&, double)> prox_op;
    std::function<double(const Matrix&)> nonsmooth_value;
    std::optional<double> lipschitz;
    bool momentum = true;
    Index rows = 0, cols = 1;
    bool with_intercept = true;
};

FitResult run_fista(const ProxProblem& prob, const SolverConfig& cfg,
                    const FitResult* warm_start) {
    if (cfg.max_iter < 1 || !(cfg.rel_tol > 0) || !(cfg.initial_step > 0) ||
        !(cfg.backtracking_shrink > 0 && cfg.backtracking_shrink < 1))
        throw InvalidInputError("bad solver configuration");

    Point x;
    if (warm_start && warm_start->coef.size() > 0) {
        if (warm_start->coef.rows() != prob.rows || warm_start->coef.cols() != prob.cols)
            throw InvalidInputError("warm start has wrong coefficient shape");
        x.beta = warm_start->coef;
        if (prob.with_intercept)
            x.inter = warm_start->has_intercept() ? warm_start->intercept
                                                  : RowVector::Zero(prob.cols);
    } else {
        x.beta = Matrix::Zero(prob.rows, prob.cols);
        if (prob.with_intercept) x.inter = RowVector::Zero(prob.cols);
    }

    const bool fixed_step = prob.lipschitz.has_value() && *prob.lipschitz > 0;
    double step = fixed_step ? 1.0 / *prob.lipschitz : cfg.initial_step;

    Point y = x;
    double t = 1.0;
    double obj_prev = prob.smooth_value(x) + prob.nonsmooth_value(x.beta);
    if (!std::isfinite(obj_prev))
        throw DivergenceError("objective not finite at the starting point");

    FitResult out;
    out.converged = false;
    std::vector<int> restarts;
    if (cfg.record_history) out.history.push_back(obj_prev);

    const auto prox_point = [&](const Point& p, double s) {
        Point z;
        z.beta = prob.prox_op(p.beta, s);
        z.inter = p.inter; // unpenalized coordinate
        return z;
    };

    int iter = 0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        const SmoothEval ev = prob.smooth_eval(y);

        // proximal step with majorization certificate
        Point x_new;
        double smooth_new = 0.0;
        for (int shrink_round = 0;; ++shrink_round) {
            Point trial = y;
            trial.beta -= step * ev.grad.beta;
            if (trial.inter.size()) trial.inter -= step * ev.grad.inter;
            x_new = prox_point(trial, step);

            const Point diff = x_new - y;
            const double quad =
                ev.value + ev.grad.dot(diff) + diff.squared_norm() / (2.0 * step);
            smooth_new = prob.smooth_value(x_new);
            const double violation = smooth_new - quad;
            if (fixed_step || violation <= 1e-12 * (1.0 + std::abs(smooth_new))) {
                out.backtrack_violation = std::max(out.backtrack_violation, violation);
                break;
            }
            if (shrink_round > 200 || step < 1e-300)
                throw DivergenceError("line search failed to find a finite step");
            step *= cfg.backtracking_shrink;
        }

        const double obj = smooth_new + prob.nonsmooth_value(x_new.beta);
        if (!std::isfinite(obj)) throw DivergenceError("objective became non-finite");

        bool restarted = false;
        if (prob.momentum) {
            if (cfg.restart == SolverConfig::Restart::gradient) {
                // momentum reversal test: <y - x_new, x_new - x> > 0
                const Point d1 = y - x_new;
                const Point d2 = x_new - x;
                if (d1.dot(d2) > 0) {
                    t = 1.0;
                    restarted = true;
                }
            }
            const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double mom = (t - 1.0) / t_new;
            y.beta = x_new.beta + mom * (x_new.beta - x.beta);
            if (y.inter.size()) y.inter = x_new.inter + mom * (x_new.inter - x.inter);
            t = t_new;
        } else {
            y = x_new;
        }
        x = x_new;

        if (cfg.record_history) {
            out.history.push_back(obj);
            if (restarted) restarts.push_back(iter);
        }

        if (std::abs(obj - obj_prev) <= cfg.rel_tol * std::max(1.0, std::abs(obj))) {
            // objective has stalled; confirm with the fixed-point residual
            const SmoothEval at_x = prob.smooth_eval(x);
            Point trial = x;
            trial.beta -= step * at_x.grad.beta;
            if (trial.inter.size()) trial.inter -= step * at_x.grad.inter;
            const Point mapped = prox_point(trial, step);
            const double resid = (x - mapped).inf_norm();
            if (resid <= cfg.fp_tol * (1.0 + x.inf_norm())) {
                obj_prev = obj;
                out.converged = true;
                break;
            }
        }
        obj_prev = obj;
    }

    out.coef = std::move(x.beta);
    out.intercept = std::move(x.inter);
    out.objective = obj_prev;
    out.n_iter = std::min(iter, cfg.max_iter);
    if (cfg.record_history)
        for (const int r : restarts) out.history_restarts.push_back(r);
    return out;
}

ProxProblem make_penalized_problem(const LossSpec& loss, const PenaltySpec& penalty,
                                   const Dataset& data, bool intercept) {
    validate(data);
    if (!is_smooth(loss))
        throw UnsupportedError(
            "exact quantile loss is not smooth; set quantile_smoothing > 0");
    const Index cols = coef_columns(loss, data);
    validate_penalty(penalty, data.d(), cols);

    ProxProblem prob;
    prob.rows = data.d();
    prob.cols = cols;
    prob.with_intercept = intercept;
    prob.lipschitz = lipschitz_constant(loss, data, intercept);

    if (penalty.kind == PenaltyKind::generalized_ridge) {
        // smooth augmentation: value lam/2 ||G b||^2, gradient lam G'G b
        const Matrix gram = penalty.tikhonov.transpose() * penalty.tikhonov;
        const double lam = penalty.pen_val;
        if (prob.lipschitz) {
            Eigen::BDCSVD<Matrix> svd(penalty.tikhonov);
            const double gmax = svd.singularValues()(0);
            prob.lipschitz = *prob.lipschitz + lam * gmax * gmax;
        }
        prob.smooth_value = [=, &data](const Point& p) {
            return loss_value(loss, data, p.beta, p.inter) +
                   0.5 * lam * (penalty.tikhonov * p.beta).squaredNorm();
        };
        prob.smooth_eval = [=, &data](const Point& p) {
            LossEval ev = loss_value_and_gradient(loss, data, p.beta, p.inter);
            SmoothEval out;
            out.value = ev.value + 0.5 * lam * (penalty.tikhonov * p.beta).squaredNorm();
            out.grad.beta = ev.grad_beta + lam * (gram * p.beta);
            out.grad.inter = std::move(ev.grad_inter);
            return out;
        };
        prob.prox_op = [](const Matrix& x, double) { return x; };
        prob.nonsmooth_value = [](const Matrix&) { return 0.0; };
        return prob;
    }

    prob.smooth_value = [=, &data](const Point& p) {
        return loss_value(loss, data, p.beta, p.inter);
    };
    prob.smooth_eval = [=, &data](const Point& p) {
        LossEval ev = loss_value_and_gradient(loss, data, p.beta, p.inter);
        return SmoothEval{ev.value, {std::move(ev.grad_beta), std::move(ev.grad_inter)}};
    };
    prob.prox_op = [penalty](const Matrix& x, double s) { return prox(penalty, x, s); };
    prob.nonsmooth_value = [penalty](const Matrix& b) { return penalty_value(penalty, b); };
    return prob;
}

} // namespace

FitResult fit(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
              const SolverConfig& cfg, const FitResult* warm_start, bool intercept) {
    if (penalty.kind == PenaltyKind::infimal_sum)
        return fit_infimal(loss, penalty.components, data, cfg, warm_start, intercept);
    const ProxProblem prob = make_penalized_problem(loss, penalty, data, intercept);
    return run_fista(prob, cfg, warm_start);
}

FitResult fit(const LossSpec& loss, const ConstraintSpec& constraint, const Dataset& data,
              const SolverConfig& cfg, const FitResult* warm_start, bool intercept) {
    validate(data);
    if (!is_smooth(loss))
        throw UnsupportedError(
            "exact quantile loss is not smooth; set quantile_smoothing > 0");

    ProxProblem prob;
    prob.rows = data.d();
    prob.cols = coef_columns(loss, data);
    prob.with_intercept = intercept;
    prob.lipschitz = lipschitz_constant(loss, data, intercept);
    prob.momentum = is_convex_constraint(constraint.kind);
    prob.smooth_value = [=, &data](const Point& p) {
        return loss_value(loss, data, p.beta, p.inter);
    };
    prob.smooth_eval = [=, &data](const Point& p) {
        LossEval ev = loss_value_and_gradient(loss, data, p.beta, p.inter);
        return SmoothEval{ev.value, {std::move(ev.grad_beta), std::move(ev.grad_inter)}};
    };
    prob.prox_op = [constraint](const Matrix& x, double) { return project(constraint, x); };
    prob.nonsmooth_value = [](const Matrix&) { return 0.0; };
    return run_fista(prob, cfg, warm_start);
}

TunePath fit_path(const LossSpec& loss, const PenaltySpec& pen_template, const Dataset& data,
                  const Vector& grid, const SolverConfig& cfg, bool intercept) {
    if (grid.size() == 0) throw InvalidInputError("empty lambda grid");
    for (Index i = 0; i < grid.size(); ++i) {
        if (!(grid(i) > 0)) throw InvalidInputError("grid values must be positive");
        if (i > 0 && grid(i) >= grid(i - 1))
            throw InvalidInputError("grid must be strictly decreasing");
    }

    TunePath path;
    path.grid = grid;
    path.fits.reserve(static_cast<std::size_t>(grid.size()));
    const FitResult* warm = nullptr;
    for (Index i = 0; i < grid.size(); ++i) {
        path.fits.push_back(
            fit(loss, pen_template.with_pen_val(grid(i)), data, cfg, warm, intercept));
        warm = &path.fits.back();
    }
    return path;
}

FitResult fit_infimal(const LossSpec& loss, const std::vector<PenaltySpec>& components,
                      const Dataset& data, const SolverConfig& cfg,
                      const FitResult* warm_start, bool intercept) {
    validate(data);
    if (components.empty()) throw InvalidInputError("fit_infimal needs at least one component");
    if (!is_smooth(loss))
        throw UnsupportedError(
            "exact quantile loss is not smooth; set quantile_smoothing > 0");
    const Index d = data.d();
    const Index cols = coef_columns(loss, data);
    const auto q = static_cast<Index>(components.size());
    for (const auto& c : components) {
        validate_penalty(c, d, cols);
        if (c.kind == PenaltyKind::infimal_sum)
            throw UnsupportedError("nested infimal sums are not supported");
    }

    // blocks stacked vertically: rows [j*d, (j+1)*d) hold b_j
    ProxProblem prob;
    prob.rows = q * d;
    prob.cols = cols;
    prob.with_intercept = intercept;
    if (const auto base = lipschitz_constant(loss, data, intercept))
        prob.lipschitz = static_cast<double>(q) * *base;

    const auto total_coef = [d, q](const Matrix& stacked) {
        Matrix sum = stacked.topRows(d);
        for (Index j = 1; j < q; ++j) sum += stacked.middleRows(j * d, d);
        return sum;
    };
    prob.smooth_value = [=, &data](const Point& p) {
        return loss_value(loss, data, total_coef(p.beta), p.inter);
    };
    prob.smooth_eval = [=, &data](const Point& p) {
        LossEval ev = loss_value_and_gradient(loss, data, total_coef(p.beta), p.inter);
        SmoothEval out;
        out.value = ev.value;
        out.grad.beta.resize(q * d, cols);
        for (Index j = 0; j < q; ++j) out.grad.beta.middleRows(j * d, d) = ev.grad_beta;
        out.grad.inter = std::move(ev.grad_inter);
        return out;
    };
    prob.prox_op = [=](const Matrix& x, double s) {
        Matrix z(q * d, cols);
        for (Index j = 0; j < q; ++j)
            z.middleRows(j * d, d) = prox(components[static_cast<std::size_t>(j)],
                                          x.middleRows(j * d, d), s);
        return z;
    };
    prob.nonsmooth_value = [=](const Matrix& b) {
        double total = 0.0;
        for (Index j = 0; j < q; ++j)
            total += penalty_value(components[static_cast<std::size_t>(j)],
                                   b.middleRows(j * d, d));
        return total;
    };

    FitResult stacked_warm;
    const FitResult* warm_ptr = nullptr;
    if (warm_start && warm_start->split.size() == components.size()) {
        stacked_warm.coef.resize(q * d, cols);
        for (Index j = 0; j < q; ++j)
            stacked_warm.coef.middleRows(j * d, d) = warm_start->split[static_cast<std::size_t>(j)];
        stacked_warm.intercept = warm_start->intercept;
        warm_ptr = &stacked_warm;
    }

    FitResult stacked = run_fista(prob, cfg, warm_ptr);
    FitResult out;
    out.split.reserve(static_cast<std::size_t>(q));
    for (Index j = 0; j < q; ++j) out.split.push_back(stacked.coef.middleRows(j * d, d));
    out.coef = total_coef(stacked.coef);
    out.intercept = std::move(stacked.intercept);
    out.objective = stacked.objective;
    out.n_iter = stacked.n_iter;
    out.converged = stacked.converged;
    out.history = std::move(stacked.history);
    out.history_restarts = std::move(stacked.history_restarts);
    out.backtrack_violation = stacked.backtrack_violation;
    return out;
}

} // namespace glmkit
