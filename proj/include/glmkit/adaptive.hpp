#pragma once

#include "glmkit/penalty.hpp"
#include "glmkit/solver.hpp"
#include "glmkit/types.hpp"

namespace glmkit {

/// Nonnegative transform t(beta) whose components carry the sparsity
/// structure: entries, group norms, row norms, singular values or (for the
/// fused flavor) successive differences.
struct TransformSpec {
    enum class Kind { entrywise, group, multi_task_rows, singular_values, tv1_differences };
    Kind kind = Kind::entrywise;
    std::vector<std::vector<Index>> groups; // group kind only
};

Vector transform(const TransformSpec& spec, const Matrix& beta);

// Output dimension D of the transform for a rows x cols coefficient.
Index transform_dim(const TransformSpec& spec, Index rows, Index cols);

struct AdaptiveSpec {
    double exponent = 1.0; // gamma > 0
    enum class Perturbation { none, one_over_n };
    Perturbation perturbation = Perturbation::one_over_n;
};

// Large-but-finite stand-in for an infinite weight when an unperturbed
// initializer entry is exactly zero; the weighted prox then kills that
// coordinate exactly while penalty values stay finite.
inline constexpr double kInfiniteWeight = 1e100;

// w_j = (t(init)_j + perturbation)^(-gamma)
Vector adaptive_weights(const AdaptiveSpec& spec, const TransformSpec& tspec,
                        const Matrix& init_coef, Index n);

// The weighted convex penalty matching a transform kind (weighted lasso /
// group lasso / multi-task / nuclear), with pen_val 1 so the weights carry
// the whole scale.
PenaltySpec weighted_penalty_for(const TransformSpec& tspec, const Vector& weights);

// Local linear approximation for the folded-concave penalty
// sum_j g_lambda(t(beta)_j): each step linearizes the concave generator at
// the current transform values and solves the weighted convex subproblem.
// The returned history holds the non-convex objective after every step
// (nonincreasing by the majorization property); history[0] is the value at
// the initializer.
FitResult lla(const LossSpec& loss, const ConcaveGenerator& gen, const TransformSpec& tspec,
              const Dataset& data, const Matrix& init_coef, const SolverConfig& cfg = {},
              int max_steps = 5, bool intercept = true);

// Tuning value above which one LLA step from init lands exactly at zero:
// max(||t(init)||_inf / b1, klb / a1), with the SCAD-like constants
// (a1, b1) = (1, 1) for SCAD and (1/2, gamma/2) for MCP. Needs a transform
// that vanishes only at zero, which rules out tv1_differences.
double lla_killer_bound(const ConcaveGenerator& gen, const TransformSpec& tspec,
                        const Matrix& init_coef, double klb);

} // namespace glmkit
