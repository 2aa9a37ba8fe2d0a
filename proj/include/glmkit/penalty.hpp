#pragma once

#include "glmkit/types.hpp"

#include <string>
#include <vector>

namespace glmkit {

enum class PenaltyKind {
    lasso,
    ridge,
    generalized_ridge,
    group_lasso,
    multi_task_lasso,
    tv1,
    nuclear_norm,
    elastic_net,
    sparse_group_lasso,
    sparse_fused_lasso,
    infimal_sum,
};

/// Penalty configuration. Weight semantics follow the penalty kind:
/// entrywise kinds take one weight per coefficient entry, group kinds one
/// per group (default sqrt of the group size), tv1 one per difference,
/// nuclear one per singular value (non-decreasing). Empty weights mean the
/// plain unweighted penalty.
struct PenaltySpec {
    PenaltyKind kind = PenaltyKind::lasso;
    double pen_val = 0.0;                  // lambda >= 0
    Vector weights;                        // per-kind semantics, empty = default
    std::vector<std::vector<Index>> groups; // disjoint, group kinds only
    double mix = 1.0;                      // alpha for elastic_net / sparse_* kinds
    Matrix tikhonov;                       // generalized_ridge operator
    std::vector<PenaltySpec> components;   // infimal_sum

    PenaltySpec with_pen_val(double lambda) const {
        PenaltySpec out = *this;
        out.pen_val = lambda;
        return out;
    }
};

const char* penalty_name(PenaltyKind kind);
PenaltyKind penalty_kind_from_name(const std::string& name);

// The ridge flavors are differentiable; the solver treats generalized_ridge
// as a smooth loss augmentation.
bool is_smooth_penalty(PenaltyKind kind);

void validate_penalty(const PenaltySpec& spec, Index rows, Index cols);

// Concrete weight vector with defaults filled in (see PenaltySpec docs).
Vector resolve_weights(const PenaltySpec& spec, Index rows, Index cols);

double penalty_value(const PenaltySpec& spec, const Matrix& beta);

// Value of an infimal-sum penalty at an explicit split beta = sum_j b_j.
double infimal_value(const PenaltySpec& spec, const std::vector<Matrix>& split);

// argmin_z ||x - z||^2 / (2 step) + penalty(z). Every kind except
// infimal_sum is proximable (the multi-penalty kinds via exact prox
// compositions).
Matrix prox(const PenaltySpec& spec, const Matrix& x, double step);

// Exact weighted 1-D total-variation prox:
//   argmin_z 1/2 sum_i (z_i - x_i)^2 + sum_i t_i |z_{i+1} - z_i|
// computed by a direct taut-string dynamic program in O(d).
Vector tv1_prox(const Vector& x, const Vector& edge_thresholds);

/// Scalar concave generator for the folded penalties (SCAD / MCP).
struct ConcaveGenerator {
    enum class Kind { scad, mcp };
    Kind kind = Kind::scad;
    double pen_val = 0.0; // lambda
    double shape = 3.7;   // SCAD a > 2, MCP gamma > 1
};

double concave_value(const ConcaveGenerator& gen, double x);
// Nonincreasing in x; equals lambda at 0.
double concave_derivative(const ConcaveGenerator& gen, double x);

} // namespace glmkit
