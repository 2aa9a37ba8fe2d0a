#include "glmkit/dataset.hpp"

#include "glmkit/errors.hpp"

#include <cmath>

namespace glmkit {

void validate(const Dataset& data) {
    const Index n = data.X.rows();
    if (n == 0 || data.X.cols() == 0)
        throw InvalidInputError("dataset is empty");
    if (data.y.rows() != n)
        throw InvalidInputError("X and y row counts differ");
    if (data.has_weights()) {
        if (data.sample_weights.size() != n)
            throw InvalidInputError("sample_weights length differs from n");
        if ((data.sample_weights.array() < 0).any())
            throw InvalidInputError("sample_weights must be nonnegative");
        if (data.sample_weights.sum() <= 0)
            throw InvalidInputError("sample_weights must not all be zero");
    }
    if (data.has_offsets() && data.offsets.size() != n)
        throw InvalidInputError("offsets length differs from n");
    if (!data.X.allFinite() || !data.y.allFinite())
        throw InvalidInputError("non-finite values in dataset");
}

Vector effective_weights(const Dataset& data) {
    const Index n = data.n();
    if (!data.has_weights()) return Vector::Ones(n);
    return data.sample_weights * (static_cast<double>(n) / data.sample_weights.sum());
}

std::pair<Dataset, StandardizationState> standardize(const Dataset& data) {
    validate(data);
    const Index n = data.n();
    const Index d = data.d();
    if (n < 2) throw InvalidInputError("standardize needs at least two rows");

    const Vector s = effective_weights(data);
    const double sw = static_cast<double>(n);

    StandardizationState state;
    state.col_means.resize(d);
    state.col_scales.resize(d);

    Dataset out = data;
    for (Index j = 0; j < d; ++j) {
        const double mean = s.dot(data.X.col(j)) / sw;
        const Vector centered = data.X.col(j).array() - mean;
        const double var = s.dot(centered.cwiseProduct(centered)) / sw;
        const double scale = var > 0 ? std::sqrt(var) : 1.0;
        state.col_means(j) = mean;
        state.col_scales(j) = scale;
        out.X.col(j) = centered / scale;
    }
    state.y_mean = data.y.cols() == 1 ? s.dot(data.y.col(0)) / sw : 0.0;
    return {std::move(out), std::move(state)};
}

std::pair<Matrix, RowVector> unstandardize_coef(const Matrix& beta_std,
                                                const RowVector& inter_std,
                                                const StandardizationState& state) {
    if (beta_std.rows() != state.col_scales.size())
        throw InvalidInputError("coefficient rows do not match standardization state");
    Matrix beta_raw = state.col_scales.cwiseInverse().asDiagonal() * beta_std;
    RowVector inter_raw = inter_std;
    if (inter_raw.size() > 0)
        inter_raw -= state.col_means.transpose() * beta_raw;
    return {std::move(beta_raw), std::move(inter_raw)};
}

} // namespace glmkit
