#include "glmkit/tuning.hpp"

#include "glmkit/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace glmkit {

namespace {

constexpr double kSupportTol = 1e-9;

void require_positive_weights(const Vector& w) {
    if ((w.array() <= 0).any())
        throw InvalidInputError(
            "killer lower bound needs strictly positive weights (zero weights make the "
            "formula inexact)");
}

// phi(lambda) = sqrt(sum_k (c_k / (sigma_k^2 + n lambda))^2) optionally plus
// the top-K tail bound; strictly decreasing, inverted by bisection.
double invert_ridge_norm(const Vector& sigma, const Vector& c, Index n, double eps_norm,
                         int top_k, double y_norm) {
    const double nn = static_cast<double>(n);
    const bool topk = top_k > 0 && top_k < sigma.size();
    const auto phi = [&](double lam) {
        double sq = 0.0;
        const Index kmax = topk ? top_k : sigma.size();
        for (Index k = 0; k < kmax; ++k) {
            const double den = sigma(k) * sigma(k) + nn * lam;
            sq += (c(k) / den) * (c(k) / den);
        }
        if (topk) {
            const double tail = sigma(top_k - 1) * y_norm / (nn * lam);
            sq += static_cast<double>(sigma.size() - top_k) * tail * tail;
        }
        return std::sqrt(sq);
    };

    double lo = 0.0, hi = 1.0;
    if (!topk && phi(1e-14) <= eps_norm) return 1e-14; // no shrinkage needed
    int guard = 0;
    while (phi(hi) > eps_norm) {
        hi *= 2.0;
        if (++guard > 200) throw DivergenceError("ridge lambda_max bracketing failed");
    }
    if (topk) lo = 1e-300; // tail term blows up at 0
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) > eps_norm ? lo : hi) = mid;
    }
    return hi;
}

// Per-sample second derivative of the loss at the intercept-only predictor.
double elem_second_deriv(const LossSpec& spec, double z, double y) {
    switch (spec.kind) {
        case LossKind::least_squares:
            return 1.0;
        case LossKind::logistic: {
            const double p = 1.0 / (1.0 + std::exp(-z));
            return p * (1.0 - p);
        }
        case LossKind::poisson:
            return std::exp(z);
        case LossKind::huber:
            return std::abs(y - z) <= spec.huber_knot ? 1.0 : 0.0;
        case LossKind::squared_hinge:
            return y * z < 1.0 ? 1.0 : 0.0;
        default:
            throw UnsupportedError("newton_lambda_max needs a twice-differentiable loss");
    }
}

double elem_first_deriv(const LossSpec& spec, double z, double y) {
    switch (spec.kind) {
        case LossKind::least_squares:
            return z - y;
        case LossKind::logistic:
            return 1.0 / (1.0 + std::exp(-z)) - y;
        case LossKind::poisson:
            return std::exp(z) - y;
        case LossKind::huber:
            return -std::clamp(y - z, -spec.huber_knot, spec.huber_knot);
        case LossKind::squared_hinge:
            return -y * std::max(0.0, 1.0 - y * z);
        default:
            throw UnsupportedError("newton_lambda_max needs a twice-differentiable loss");
    }
}

double gaussian_fit_term(double rss, double sigma2, Index n) {
    const double nn = static_cast<double>(n);
    return rss / sigma2 + nn * std::log(2.0 * M_PI * sigma2);
}

Index entry_support(const Matrix& m) {
    Index count = 0;
    for (Index i = 0; i < m.size(); ++i)
        if (m(i) != 0.0) ++count;
    return count;
}

} // namespace

std::vector<int> fold_assignment(Index n, int k_folds, std::uint64_t seed) {
    if (k_folds < 1) throw InvalidInputError("fold count must be positive");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(seed); // fixed engine + hand-rolled shuffle: reproducible everywhere
    for (Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Index>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<int> fold(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p)
        fold[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] =
            static_cast<int>(p % k_folds);
    return fold;
}

Dataset subset_rows(const Dataset& data, const std::vector<Index>& rows) {
    Dataset out;
    out.X.resize(static_cast<Index>(rows.size()), data.X.cols());
    out.y.resize(static_cast<Index>(rows.size()), data.y.cols());
    if (data.has_weights()) out.sample_weights.resize(static_cast<Index>(rows.size()));
    if (data.has_offsets()) out.offsets.resize(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto ii = static_cast<Index>(i);
        out.X.row(ii) = data.X.row(rows[i]);
        out.y.row(ii) = data.y.row(rows[i]);
        if (data.has_weights()) out.sample_weights(ii) = data.sample_weights(rows[i]);
        if (data.has_offsets()) out.offsets(ii) = data.offsets(rows[i]);
    }
    return out;
}

double klb(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
           bool intercept) {
    validate(data);
    const Index cols = coef_columns(loss, data);
    validate_penalty(penalty, data.d(), cols);

    const RowVector u0 = intercept ? intercept_at_zero(loss, data) : RowVector{};
    const Matrix zero = Matrix::Zero(data.d(), cols);
    const auto [g0, gu] = loss_gradient(loss, data, zero, u0);

    switch (penalty.kind) {
        case PenaltyKind::lasso: {
            const Vector w = resolve_weights(penalty, data.d(), cols);
            require_positive_weights(w);
            double best = 0.0;
            for (Index i = 0; i < g0.size(); ++i)
                best = std::max(best, std::abs(g0(i)) / w(i));
            return best;
        }
        case PenaltyKind::group_lasso: {
            std::set<Index> covered;
            for (const auto& g : penalty.groups) covered.insert(g.begin(), g.end());
            if (static_cast<Index>(covered.size()) != data.d())
                throw InvalidInputError("klb needs the groups to cover every coordinate");
            const Vector w = resolve_weights(penalty, data.d(), cols);
            require_positive_weights(w);
            double best = 0.0;
            for (std::size_t g = 0; g < penalty.groups.size(); ++g) {
                double sq = 0.0;
                for (const Index j : penalty.groups[g]) sq += g0(j, 0) * g0(j, 0);
                best = std::max(best, std::sqrt(sq) / w(static_cast<Index>(g)));
            }
            return best;
        }
        case PenaltyKind::multi_task_lasso: {
            const Vector w = resolve_weights(penalty, data.d(), cols);
            require_positive_weights(w);
            double best = 0.0;
            for (Index j = 0; j < g0.rows(); ++j)
                best = std::max(best, g0.row(j).norm() / w(j));
            return best;
        }
        case PenaltyKind::nuclear_norm: {
            const Vector w = resolve_weights(penalty, data.d(), cols);
            require_positive_weights(w);
            Eigen::JacobiSVD<Matrix> svd(g0);
            const Vector sv = svd.singularValues();
            double best = 0.0;
            for (Index j = 0; j < sv.size(); ++j) best = std::max(best, sv(j) / w(j));
            return best;
        }
        default:
            throw UnsupportedError("no killer lower bound for penalty kind '" +
                                   std::string(penalty_name(penalty.kind)) + "'");
    }
}

double ridge_lambda_max(const Dataset& data, double eps_norm, RidgeMaxMethod method, int top_k,
                        const Vector& pen_weights, bool intercept) {
    validate(data);
    if (!(eps_norm > 0)) throw InvalidInputError("eps_norm must be positive");
    if (data.y.cols() != 1)
        throw InvalidInputError("ridge_lambda_max expects a single response column");

    const Index n = data.n();
    const Vector s = effective_weights(data);
    Vector y = data.y.col(0);
    if (intercept) y.array() -= s.dot(y) / static_cast<double>(n);

    Matrix xt = data.X;
    if (data.has_weights()) {
        xt.array().colwise() *= s.array().sqrt();
        y.array() *= s.array().sqrt();
    }

    double target = eps_norm;
    if (pen_weights.size() > 0) {
        if (pen_weights.size() != data.d())
            throw InvalidInputError("one penalty weight per column required");
        require_positive_weights(pen_weights);
        xt = xt * pen_weights.cwiseSqrt().cwiseInverse().asDiagonal();
        target = eps_norm * std::sqrt(pen_weights.minCoeff());
    }

    if (method == RidgeMaxMethod::op_norm) {
        Eigen::BDCSVD<Matrix> svd(xt);
        const Vector sv = svd.singularValues();
        const double smin = data.d() <= n ? sv(sv.size() - 1) : 0.0;
        const double lam =
            (xt.transpose() * y).norm() / target - smin * smin;
        const double floor = smin * smin / static_cast<double>(n);
        return lam > 0 ? lam / static_cast<double>(n) : std::max(floor, 1e-14);
    }

    Eigen::BDCSVD<Matrix> svd(xt, Eigen::ComputeThinU);
    const Vector sigma = svd.singularValues();
    const Vector c = sigma.cwiseProduct(svd.matrixU().transpose() * y);
    const int k = method == RidgeMaxMethod::svd_topk ? std::max(1, top_k) : 0;
    return invert_ridge_norm(sigma, c, n, target, k, y.norm());
}

double newton_lambda_max(const LossSpec& loss, const Dataset& data, double eps_norm,
                         bool intercept) {
    validate(data);
    if (!(eps_norm > 0)) throw InvalidInputError("eps_norm must be positive");
    if (data.y.cols() != 1)
        throw InvalidInputError("newton_lambda_max expects a single response column");

    const Index n = data.n();
    const Vector s = effective_weights(data);
    const double u0 = intercept ? intercept_at_zero(loss, data)(0) : 0.0;

    Vector g(n), h(n);
    for (Index i = 0; i < n; ++i) {
        const double z = (data.has_offsets() ? data.offsets(i) : 0.0) + u0;
        g(i) = s(i) * elem_first_deriv(loss, z, data.y(i, 0));
        h(i) = s(i) * elem_second_deriv(loss, z, data.y(i, 0));
        if (h(i) < 0) throw InvalidInputError("negative curvature in newton_lambda_max");
    }

    // transformed data (diag(h)^{1/2} X, diag(h)^{-1/2} g): the ridge norm
    // expression only needs sigma(Xt) and V' X' g, so zero-curvature rows
    // never get divided by.
    const Matrix xt = h.cwiseSqrt().asDiagonal() * data.X;
    Eigen::BDCSVD<Matrix> svd(xt, Eigen::ComputeThinV);
    const Vector sigma = svd.singularValues();
    const Vector c = svd.matrixV().transpose() * (data.X.transpose() * g);
    return invert_ridge_norm(sigma, c, n, eps_norm, 0, 0.0);
}

Vector make_grid(double lmax, const GridSpec& spec) {
    if (spec.user_grid.size() > 0) {
        for (Index i = 0; i < spec.user_grid.size(); ++i) {
            if (!(spec.user_grid(i) > 0))
                throw InvalidInputError("user grid values must be positive");
            if (i > 0 && spec.user_grid(i) >= spec.user_grid(i - 1))
                throw InvalidInputError("user grid must be strictly decreasing");
        }
        return spec.user_grid;
    }
    if (!(lmax > 0)) throw InvalidInputError("lambda_max must be positive");
    if (spec.n_points < 1) throw InvalidInputError("grid needs at least one point");
    if (!(spec.eps > 0 && spec.eps < 1)) throw InvalidInputError("grid eps must lie in (0,1)");

    Vector grid(spec.n_points);
    grid(0) = lmax;
    if (spec.n_points == 1) return grid;
    const double loglmax = std::log(lmax);
    const double logeps = std::log(spec.eps);
    for (int i = 1; i < spec.n_points; ++i)
        grid(i) = std::exp(loglmax + logeps * static_cast<double>(i) /
                                         static_cast<double>(spec.n_points - 1));
    grid(spec.n_points - 1) = lmax * spec.eps; // exact endpoint
    return grid;
}

LambdaMax lambda_max_auto(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
                          bool intercept, double ridge_eps_norm) {
    const auto lasso_cap = [&](const Vector& weights) {
        PenaltySpec l;
        l.kind = PenaltyKind::lasso;
        l.weights = weights;
        return klb(loss, l, data, intercept);
    };
    switch (penalty.kind) {
        case PenaltyKind::lasso:
        case PenaltyKind::group_lasso:
        case PenaltyKind::multi_task_lasso:
        case PenaltyKind::nuclear_norm:
            return {klb(loss, penalty, data, intercept), true};
        case PenaltyKind::elastic_net: {
            if (penalty.mix == 0.0) {
                PenaltySpec r = penalty;
                r.kind = PenaltyKind::ridge;
                return lambda_max_auto(loss, r, data, intercept, ridge_eps_norm);
            }
            return {lasso_cap(penalty.weights) / penalty.mix, true};
        }
        case PenaltyKind::sparse_group_lasso: {
            PenaltySpec g = penalty;
            g.kind = PenaltyKind::group_lasso;
            double best = std::numeric_limits<double>::infinity();
            if (penalty.mix > 0) best = lasso_cap(Vector{}) / penalty.mix;
            if (penalty.mix < 1)
                best = std::min(best, klb(loss, g, data, intercept) / (1.0 - penalty.mix));
            return {best, true};
        }
        case PenaltyKind::ridge: {
            if (loss.kind == LossKind::least_squares)
                return {ridge_lambda_max(data, ridge_eps_norm, RidgeMaxMethod::svd_exact, 0,
                                         penalty.weights, intercept),
                        true};
            return {newton_lambda_max(loss, data, ridge_eps_norm, intercept), true};
        }
        case PenaltyKind::tv1:
            // no closed form; entrywise cap, flagged inexact
            return {lasso_cap(Vector{}), false};
        case PenaltyKind::sparse_fused_lasso: {
            if (penalty.mix > 0) return {lasso_cap(Vector{}) / penalty.mix, false};
            return {lasso_cap(Vector{}), false};
        }
        case PenaltyKind::generalized_ridge: {
            if (loss.kind == LossKind::least_squares)
                return {ridge_lambda_max(data, ridge_eps_norm, RidgeMaxMethod::svd_exact, 0, {},
                                         intercept),
                        false};
            return {newton_lambda_max(loss, data, ridge_eps_norm, intercept), false};
        }
        case PenaltyKind::infimal_sum:
            throw UnsupportedError("no automatic lambda_max for infimal sums");
    }
    throw InvalidInputError("unknown penalty kind");
}

TunePath cross_validate_with(const PathFitter& fitter, const LossSpec& loss, const Dataset& data,
                             const Vector& grid, int k_folds, std::uint64_t seed, CvRule rule,
                             bool standardize_folds, bool intercept) {
    validate(data);
    if (k_folds < 2) throw InvalidInputError("cross-validation needs k >= 2");
    if (data.n() < k_folds) throw InvalidInputError("more folds than samples");
    if (grid.size() == 0) throw InvalidInputError("empty lambda grid");

    const Index n = data.n();
    const std::vector<int> fold = fold_assignment(n, k_folds, seed);

    const auto run_fold = [&](int f) {
        std::vector<Index> train_rows, test_rows;
        for (Index i = 0; i < n; ++i)
            (fold[static_cast<std::size_t>(i)] == f ? test_rows : train_rows).push_back(i);
        const Dataset train = subset_rows(data, train_rows);
        const Dataset test = subset_rows(data, test_rows);

        if (loss.kind == LossKind::logistic || loss.kind == LossKind::multinomial ||
            loss.kind == LossKind::squared_hinge) {
            for (Index k = 0; k < train.y.cols(); ++k)
                if (train.y.col(k).minCoeff() == train.y.col(k).maxCoeff())
                    throw InvalidInputError("cross-validation fold has a single class");
            if (loss.kind == LossKind::multinomial)
                check_response(loss, train); // label range
        }

        Vector metric(grid.size());
        if (standardize_folds) {
            const auto [train_std, state] = standardize(train);
            const auto fits = fitter(train_std, grid, intercept, &state);
            for (Index k = 0; k < grid.size(); ++k) {
                const auto& fr = fits[static_cast<std::size_t>(k)];
                const auto [coef_raw, inter_raw] =
                    unstandardize_coef(fr.coef, fr.intercept, state);
                metric(k) = loss_value(loss, test, coef_raw, inter_raw);
            }
        } else {
            const auto fits = fitter(train, grid, intercept, nullptr);
            for (Index k = 0; k < grid.size(); ++k)
                metric(k) = loss_value(loss, test, fits[static_cast<std::size_t>(k)].coef,
                                       fits[static_cast<std::size_t>(k)].intercept);
        }
        return metric;
    };

    // independent fold tasks, merged in fold order
    std::vector<std::future<Vector>> futures;
    futures.reserve(static_cast<std::size_t>(k_folds));
    for (int f = 0; f < k_folds; ++f)
        futures.push_back(std::async(std::launch::async, run_fold, f));

    Matrix fold_metrics(grid.size(), k_folds);
    for (int f = 0; f < k_folds; ++f) fold_metrics.col(f) = futures[static_cast<std::size_t>(f)].get();

    TunePath path;
    path.grid = grid;
    const double kk = static_cast<double>(k_folds);
    Vector mean = fold_metrics.rowwise().mean();
    Vector se(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const double m = mean(i);
        double var = 0.0;
        for (int f = 0; f < k_folds; ++f) {
            const double dlt = fold_metrics(i, f) - m;
            var += dlt * dlt;
        }
        se(i) = std::sqrt(var / (kk - 1.0)) / std::sqrt(kk);
    }
    path.metrics["cv_mean"] = mean;
    path.metrics["cv_se"] = se;
    for (int f = 0; f < k_folds; ++f)
        path.metrics["cv_fold_" + std::to_string(f)] = fold_metrics.col(f);

    Index best = 0;
    for (Index i = 1; i < grid.size(); ++i)
        if (mean(i) < mean(best)) best = i;
    if (rule == CvRule::min) {
        path.selected_index = static_cast<int>(best);
        path.selection_rule = "cv_min";
    } else {
        const double threshold = mean(best) + se(best);
        Index chosen = best;
        for (Index i = 0; i <= best; ++i)
            if (mean(i) <= threshold) {
                chosen = i;
                break;
            }
        path.selected_index = static_cast<int>(chosen);
        path.selection_rule = "cv_1se";
    }

    // final fits on the full data as given (refit at the selected value
    // comes for free with the path)
    path.fits = fitter(data, grid, intercept, nullptr);
    return path;
}

TunePath cross_validate(const LossSpec& loss, const PenaltySpec& pen_template, const Dataset& data,
                        const Vector& grid, int k_folds, std::uint64_t seed, CvMetric metric,
                        CvRule rule, const SolverConfig& cfg, bool standardize_folds,
                        bool intercept) {
    (void)metric; // held-out loss is the only metric
    const PathFitter fitter = [&](const Dataset& train, const Vector& g, bool inter,
                                  const StandardizationState*) {
        return fit_path(loss, pen_template, train, g, cfg, inter).fits;
    };
    return cross_validate_with(fitter, loss, data, grid, k_folds, seed, rule, standardize_folds,
                               intercept);
}

int degrees_of_freedom(const PenaltySpec& penalty, const Matrix& coef, bool intercept) {
    Index df = 0;
    switch (penalty.kind) {
        case PenaltyKind::group_lasso: {
            for (const auto& g : penalty.groups) {
                double sq = 0.0;
                for (const Index j : g) sq += coef(j, 0) * coef(j, 0);
                if (std::sqrt(sq) > kSupportTol) ++df;
            }
            break;
        }
        case PenaltyKind::multi_task_lasso:
            for (Index j = 0; j < coef.rows(); ++j)
                if (coef.row(j).norm() > kSupportTol) ++df;
            break;
        case PenaltyKind::nuclear_norm: {
            Eigen::JacobiSVD<Matrix> svd(coef);
            const Vector sv = svd.singularValues();
            const double tol = kSupportTol * (1.0 + (sv.size() ? sv(0) : 0.0));
            for (Index j = 0; j < sv.size(); ++j)
                if (sv(j) > tol) ++df;
            break;
        }
        case PenaltyKind::tv1: {
            const double tol = kSupportTol * (1.0 + coef.cwiseAbs().maxCoeff());
            for (Index j = 0; j + 1 < coef.rows(); ++j)
                if (std::abs(coef(j + 1, 0) - coef(j, 0)) > tol) ++df;
            break;
        }
        default:
            df = entry_support(coef);
            break;
    }
    return static_cast<int>(df) + (intercept ? 1 : 0);
}

TunePath select_by_ic(const TunePath& path, const SelectionCriterion& crit, const LossSpec& loss,
                      const PenaltySpec& penalty, const Dataset& data,
                      std::optional<double> sigma2, bool intercept) {
    if (path.fits.empty()) throw InvalidInputError("path has no fits");
    const Index n = data.n();
    const Index d = data.d();
    const double nn = static_cast<double>(n);

    double factor = 2.0;
    std::string rule = "aic";
    if (crit.kind == SelectionCriterion::Kind::bic) {
        factor = std::log(nn);
        rule = "bic";
    } else if (crit.kind == SelectionCriterion::Kind::ebic) {
        if (crit.ebic_gamma < 0 || crit.ebic_gamma > 1)
            throw InvalidInputError("ebic gamma must lie in [0,1]");
        factor = std::log(nn) + 2.0 * crit.ebic_gamma * std::log(static_cast<double>(d));
        rule = "ebic";
    }

    const bool gaussian = loss.kind == LossKind::least_squares;
    if (gaussian && !crit.use_plugin_variance && !sigma2)
        throw InvalidInputError("Gaussian criterion needs sigma2 when the plug-in is disabled");

    TunePath out = path;
    Vector score(path.grid.size());
    Vector dfs(path.grid.size());
    for (Index k = 0; k < path.grid.size(); ++k) {
        const auto& fr = path.fits[static_cast<std::size_t>(k)];
        const double lv = loss_value(loss, data, fr.coef, fr.intercept);
        const int df = degrees_of_freedom(penalty, fr.coef, intercept && fr.has_intercept());
        double fit_term = 0.0;
        if (gaussian) {
            const double rss = 2.0 * nn * lv;
            const double s2 = crit.use_plugin_variance && !sigma2
                                  ? std::max(rss / nn, 1e-300)
                                  : *sigma2;
            fit_term = gaussian_fit_term(rss, s2, n);
        } else {
            fit_term = 2.0 * nn * lv;
        }
        score(k) = fit_term + factor * static_cast<double>(df);
        dfs(k) = static_cast<double>(df);
    }

    Index best = 0;
    for (Index k = 1; k < score.size(); ++k)
        if (score(k) < score(best)) best = k; // ties keep the larger lambda
    out.metrics["ic_score"] = score;
    out.metrics["df"] = dfs;
    out.selected_index = static_cast<int>(best);
    out.selection_rule = rule;
    return out;
}

double noise_variance_reid(const TunePath& path, const Dataset& data) {
    if (path.selected_index < 0) throw InvalidInputError("path has no selected lambda");
    const auto& fr = path.selected_fit();
    const Index n = data.n();
    LossSpec ls;
    const double rss = 2.0 * static_cast<double>(n) * loss_value(ls, data, fr.coef, fr.intercept);
    const Index support = entry_support(fr.coef);
    if (support >= n)
        throw InvalidInputError("support size reaches n: Reid estimator undefined");
    return rss / static_cast<double>(n - support);
}

Vector noise_variance_plugin(const TunePath& path, const Dataset& data) {
    if (path.fits.empty()) throw InvalidInputError("path has no fits");
    LossSpec ls;
    const double nn = static_cast<double>(data.n());
    Vector out(path.grid.size());
    for (Index k = 0; k < path.grid.size(); ++k) {
        const auto& fr = path.fits[static_cast<std::size_t>(k)];
        out(k) = 2.0 * nn * loss_value(ls, data, fr.coef, fr.intercept) / nn;
    }
    return out;
}

} // namespace glmkit
