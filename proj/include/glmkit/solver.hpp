#pragma once

#include "glmkit/constraint.hpp"
#include "glmkit/dataset.hpp"
#include "glmkit/loss.hpp"
#include "glmkit/penalty.hpp"
#include "glmkit/types.hpp"

namespace glmkit {

struct SolverConfig {
    int max_iter = 2000;
    double rel_tol = 1e-8;            // relative objective-change trigger
    double fp_tol = 1e-6;             // prox-gradient fixed-point residual, scaled
    double backtracking_shrink = 0.5; // in (0,1)
    double initial_step = 1.0;        // used when no Lipschitz constant exists
    enum class Restart { gradient, none };
    Restart restart = Restart::gradient;
    bool record_history = false;      // keep per-iteration objectives + restart marks
};

// Accelerated proximal gradient (FISTA) with gradient-based adaptive
// restarts. The step is 1/L when the loss has a Lipschitz gradient,
// otherwise a backtracking line search shrinks the step until the quadratic
// majorization holds (the accepted step carries over to the next iteration).
// The intercept rides along as an unpenalized coordinate. Stops when the
// relative objective change drops below rel_tol AND the prox-gradient
// fixed-point residual is below fp_tol * (1 + ||x||_inf).
//
// generalized_ridge is folded into the smooth part (gradient augmentation);
// everything else goes through its proximal operator.
FitResult fit(const LossSpec& loss, const PenaltySpec& penalty, const Dataset& data,
              const SolverConfig& cfg = {}, const FitResult* warm_start = nullptr,
              bool intercept = true);

// Constrained variant: the projection plays the role of the prox. Convex
// sets run through FISTA; sparse/rank fall back to plain projected gradient
// (no momentum), a heuristic without global guarantees.
FitResult fit(const LossSpec& loss, const ConstraintSpec& constraint, const Dataset& data,
              const SolverConfig& cfg = {}, const FitResult* warm_start = nullptr,
              bool intercept = true);

// Warm-started path over a strictly decreasing, positive lambda grid.
TunePath fit_path(const LossSpec& loss, const PenaltySpec& pen_template, const Dataset& data,
                  const Vector& grid, const SolverConfig& cfg = {}, bool intercept = true);

// Infimal-sum problem: minimize L(sum_j b_j) + sum_j pen_j(b_j) by FISTA on
// the stacked variable; the prox is blockwise. Returns coef = sum_j b_j with
// the split attached.
FitResult fit_infimal(const LossSpec& loss, const std::vector<PenaltySpec>& components,
                      const Dataset& data, const SolverConfig& cfg = {},
                      const FitResult* warm_start = nullptr, bool intercept = true);

} // namespace glmkit
