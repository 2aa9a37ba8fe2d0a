#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace glmkit {

using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Coefficients are d x K matrices throughout; K = 1 for single-response
// models. The intercept is a 1 x K row vector, empty when no intercept is
// fit.

struct FitResult {
    Matrix coef;
    RowVector intercept;               // size 0 => no intercept
    double objective = 0.0;
    int n_iter = 0;
    bool converged = false;
    std::vector<Matrix> split;         // infimal-sum components b_j
    std::vector<double> history;       // recorded objectives (when enabled)
    std::vector<int> history_restarts; // iterations where momentum was reset
    double backtrack_violation = 0.0;  // worst majorization slack observed

    bool has_intercept() const { return intercept.size() > 0; }
};

struct TunePath {
    Vector grid;                       // strictly decreasing lambdas
    std::vector<FitResult> fits;       // one per grid value
    std::map<std::string, Vector> metrics;
    int selected_index = -1;
    std::string selection_rule;

    double selected_lambda() const { return grid(selected_index); }
    const FitResult& selected_fit() const { return fits.at(static_cast<std::size_t>(selected_index)); }
};

} // namespace glmkit
