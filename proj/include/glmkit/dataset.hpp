#pragma once

#include "glmkit/types.hpp"

namespace glmkit {

/// A regression dataset: covariates, response(s), optional per-sample
/// weights and offsets. Responses are a matrix with one column per response;
/// class labels (logistic/multinomial) live in a single column.
struct Dataset {
    Matrix X;               // n x d
    Matrix y;               // n x K
    Vector sample_weights;  // empty or length n, nonnegative, not all zero
    Vector offsets;         // empty or length n

    Index n() const { return X.rows(); }
    Index d() const { return X.cols(); }
    Index n_responses() const { return y.cols(); }
    bool has_weights() const { return sample_weights.size() > 0; }
    bool has_offsets() const { return offsets.size() > 0; }
};

/// Column means/scales used to standardize X, kept for mapping coefficients
/// back to the raw scale.
struct StandardizationState {
    Vector col_means;
    Vector col_scales;   // strictly positive
    double y_mean = 0.0; // reporting only (single-response case)
};

// Shape/weight validation shared by every consumer. Throws InvalidInputError.
void validate(const Dataset& data);

// Sample weights rescaled so they sum to n (unit weights when absent).
Vector effective_weights(const Dataset& data);

// Weighted mean-center and scale each column of X to unit population
// standard deviation (divisor n). Zero-variance columns are centered only
// and get scale 1. y, weights and offsets pass through untouched.
std::pair<Dataset, StandardizationState> standardize(const Dataset& data);

// Map coefficients fitted on standardized X back to the raw scale so that
// predictions agree: beta_raw(j,:) = beta_std(j,:)/scale_j and the intercept
// absorbs the centering shift.
std::pair<Matrix, RowVector> unstandardize_coef(const Matrix& beta_std,
                                                const RowVector& inter_std,
                                                const StandardizationState& state);

} // namespace glmkit
