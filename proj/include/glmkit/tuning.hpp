#pragma once

#include "glmkit/dataset.hpp"
#include "glmkit/loss.hpp"
#include "glmkit/penalty.hpp"
#include "glmkit/solver.hpp"
#include "glmkit/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace glmkit {

struct GridSpec {
    int n_points = 100;
    double eps = 1e-3;   // grid spans [eps * lmax, lmax]
    Vector user_grid;    // overrides everything when nonempty
};

// Killer lower bound: the smallest lambda guaranteed to shrink the whole
// coefficient to zero, from the gradient of the loss at (0, u0) where u0
// minimizes the intercept-only problem. Supports lasso, group_lasso,
// multi_task_lasso and nuclear_norm; weights must be strictly positive.
// The same value serves as a weak lambda_max for the SCAD/MCP flavors.
double klb(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
           bool intercept = true);

enum class RidgeMaxMethod { svd_exact, svd_topk, op_norm };

// lambda such that the ridge solution satisfies ||beta||_2 <= eps_norm:
// svd_exact inverts the exact SVD norm expression by bisection, svd_topk a
// top-K upper bound (hence never smaller than svd_exact), op_norm the
// operator-norm bound in closed form (floored at sigma_min^2/n). Sample
// weights enter by sqrt-scaling the rows; penalty weights by the
// diag(w)^{-1/2} column transform with the 1/min(w) slack.
double ridge_lambda_max(const Dataset& data, double eps_norm,
                        RidgeMaxMethod method = RidgeMaxMethod::svd_exact, int top_k = 0,
                        const Vector& pen_weights = {}, bool intercept = true);

// Ridge lambda_max heuristic for twice-differentiable GLM losses: bounds the
// norm of a single Newton step from beta = 0 (intercept held at u0) by
// mapping it onto a ridge problem with curvature-transformed data.
double newton_lambda_max(const LossSpec& loss, const Dataset& data, double eps_norm,
                         bool intercept = true);

// Log-spaced descending grid on [eps * lmax, lmax], endpoints exact.
Vector make_grid(double lmax, const GridSpec& spec = {});

struct LambdaMax {
    double value = 0.0;
    bool exact = true; // false for the conservative caps (tv1, sparse fused)
};

// lambda_max dispatch over penalty kinds, used by the CLI pipeline.
LambdaMax lambda_max_auto(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
                          bool intercept = true, double ridge_eps_norm = 0.1);

enum class CvRule { min, one_se };
enum class CvMetric { heldout_loss };

// Fits one path on (possibly fold-standardized) training data; `state` is
// the fold's standardization state, null when standardization is off or for
// the final full-data pass. Lets two-stage estimators map a shared
// initializer onto the fold scale.
using PathFitter = std::function<std::vector<FitResult>(
    const Dataset& train, const Vector& grid, bool intercept, const StandardizationState* state)>;

// K-fold cross-validation: deterministic seeded fold shuffle, per-fold
// standardization fit on the training portion only, warm-started paths per
// fold, mean held-out loss +/- standard error per lambda, selection by the
// min or 1se rule, and a final path on the full data. Folds run as
// independent tasks and are merged in fold order.
TunePath cross_validate(const LossSpec& loss, const PenaltySpec& pen_template,
                        const Dataset& data, const Vector& grid, int k_folds, std::uint64_t seed,
                        CvMetric metric = CvMetric::heldout_loss, CvRule rule = CvRule::one_se,
                        const SolverConfig& cfg = {}, bool standardize_folds = true,
                        bool intercept = true);

// Same machinery with a caller-supplied path fitter (two-stage estimators).
TunePath cross_validate_with(const PathFitter& fitter, const LossSpec& loss, const Dataset& data,
                             const Vector& grid, int k_folds, std::uint64_t seed,
                             CvRule rule = CvRule::one_se, bool standardize_folds = true,
                             bool intercept = true);

struct SelectionCriterion {
    enum class Kind { aic, bic, ebic };
    Kind kind = Kind::bic;
    double ebic_gamma = 0.5;        // extra charge 2*gamma*log(d) per variable
    bool use_plugin_variance = true; // Gaussian fit term with RSS_lambda/n
};

// Support-size degrees of freedom: entrywise support for entrywise
// penalties, count of nonzero transform entries (group norms, row norms,
// singular values, successive differences) otherwise; +1 when an intercept
// is present.
int degrees_of_freedom(const PenaltySpec& penalty, const Matrix& coef, bool intercept);

// score(lambda) = 2n * averaged-NLL + factor(n,d) * df(lambda) with factor
// 2 (AIC), log n (BIC) or log n + 2 gamma log d (EBIC); Gaussian fit terms
// use sigma2 or the per-lambda plug-in estimate. Ties go to the larger
// lambda. Returns a copy of the path with scores and selected index filled.
TunePath select_by_ic(const TunePath& path, const SelectionCriterion& crit, const LossSpec& loss,
                      const PenaltySpec& penalty, const Dataset& data,
                      std::optional<double> sigma2 = std::nullopt, bool intercept = true);

// Reid estimator: RSS at the tuned lambda over (n - support size).
double noise_variance_reid(const TunePath& path, const Dataset& data);

// Per-lambda plug-in estimates RSS_lambda / n.
Vector noise_variance_plugin(const TunePath& path, const Dataset& data);

// Deterministic fold assignment (Fisher-Yates on a seeded mt19937_64, folds
// round-robin over the shuffled order). Exposed for tests.
std::vector<int> fold_assignment(Index n, int k_folds, std::uint64_t seed);

// Row subset of a dataset (weights/offsets included).
Dataset subset_rows(const Dataset& data, const std::vector<Index>& rows);

} // namespace glmkit
