#pragma once

#include "glmkit/types.hpp"

#include <string>

namespace glmkit {

enum class ConstraintKind {
    positive,
    box,
    simplex,
    l1_ball,
    l2_ball,
    linear_equality,
    isotonic,
    sparse,
    rank,
};

struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::positive;
    double lower = 0.0, upper = 0.0; // box bounds
    double radius = 1.0;             // l1/l2 ball
    Matrix A;                        // linear equality A z = b
    Vector b;
    Index max_card = 1;              // sparse: ||z||_0 <= K, rank: rank(z) <= K
};

const char* constraint_name(ConstraintKind kind);

// sparse and rank are the non-convex entries; the solver drops momentum for
// them.
bool is_convex_constraint(ConstraintKind kind);

// Euclidean projection onto the constraint set. For the convex kinds this is
// the unique minimizer; for sparse/rank it keeps the largest magnitudes /
// leading singular values (ties broken by index).
Matrix project(const ConstraintSpec& spec, const Matrix& x);

} // namespace glmkit
