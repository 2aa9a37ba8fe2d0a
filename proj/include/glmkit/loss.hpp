#pragma once

#include "glmkit/dataset.hpp"
#include "glmkit/types.hpp"

#include <optional>

namespace glmkit {

enum class LossKind {
    least_squares,
    logistic,
    multinomial,
    poisson,
    huber,
    quantile,
    squared_hinge,
};

struct LossSpec {
    LossKind kind = LossKind::least_squares;
    double huber_knot = 1.0;        // delta > 0
    double quantile_level = 0.5;    // q in (0,1)
    int class_count = 2;            // K >= 2, multinomial only
    double quantile_smoothing = 0.0; // h >= 0; 0 = exact pinball loss
};

const char* loss_name(LossKind kind);
LossKind loss_kind_from_name(const std::string& name);

// quantile with h = 0 is the only non-smooth entry
bool is_smooth(const LossSpec& spec);

// Number of columns of the coefficient matrix for this loss/data pair.
Index coef_columns(const LossSpec& spec, const Dataset& data);

// Z = offsets + X*beta + intercept, one column per response/class.
Matrix linear_predictor(const Dataset& data, const Matrix& beta, const RowVector& inter);

// (1/n) sum_i s_i l(z_i, y_i), summed over response columns.
double loss_value(const LossSpec& spec, const Dataset& data, const Matrix& beta,
                  const RowVector& inter);

// Gradient in (beta, intercept); the intercept part is empty when inter is.
// At the quantile kink (h = 0) the subgradient selection 0 is returned.
std::pair<Matrix, RowVector> loss_gradient(const LossSpec& spec, const Dataset& data,
                                           const Matrix& beta, const RowVector& inter);

struct LossEval {
    double value = 0.0;
    Matrix grad_beta;
    RowVector grad_inter;
};

// Value and gradient from a single pass over the linear predictor.
LossEval loss_value_and_gradient(const LossSpec& spec, const Dataset& data, const Matrix& beta,
                                 const RowVector& inter);

// Lipschitz constant of the gradient when one exists: c * sigma_max(Xt)^2 / n
// with Xt the (weight-scaled) design, plus a ones column when an intercept is
// fit. poisson and the exact quantile loss return nullopt (the solver then
// backtracks).
std::optional<double> lipschitz_constant(const LossSpec& spec, const Dataset& data,
                                         bool with_intercept);

// argmin_u L(0, u); closed forms where available, 1-D golden-section
// minimization otherwise. Throws UnboundedError when no finite minimizer
// exists (single-class logistic, all-zero poisson counts).
RowVector intercept_at_zero(const LossSpec& spec, const Dataset& data);

// Response-domain validation for this loss (labels, counts, signs).
void check_response(const LossSpec& spec, const Dataset& data);

} // namespace glmkit
