#include "glmkit/penalty.hpp"

#include "glmkit/errors.hpp"

#include <vector>

namespace glmkit {

// Taut-string dynamic program over the derivative of the forward value
// function. The derivative of h_i is piecewise linear and nondecreasing;
// the min-convolution with t|.| clips it to [-t, t] and the next data term
// adds (u - x_{i+1}). Knots are pushed/popped at most once, so the whole
// pass is O(d). Interior pieces pick up slope +1 and intercept -x per later
// step; that update is applied lazily via birth indices and a prefix sum of
// the data values.
Vector tv1_prox(const Vector& x, const Vector& edge_thresholds) {
    const Index d = x.size();
    if (d == 0) return x;
    if (edge_thresholds.size() != d - 1)
        throw InvalidInputError("tv1_prox needs one threshold per difference");
    if (d == 1) return x;
    if ((edge_thresholds.array() < 0).any())
        throw InvalidInputError("tv1_prox thresholds must be nonnegative");

    struct Knot {
        double pos;
        double a, b;  // derivative piece to the right of pos, at birth time
        Index birth;
    };

    std::vector<Knot> knots(static_cast<std::size_t>(2 * d));
    Index l = d, r = d - 1; // empty deque: l > r

    // cum[s] = x_0 + ... + x_{s-1}; step s means s data terms absorbed
    std::vector<double> cum(static_cast<std::size_t>(d + 1), 0.0);
    for (Index i = 0; i < d; ++i) cum[static_cast<std::size_t>(i + 1)] = cum[static_cast<std::size_t>(i)] + x(i);

    Index step = 1;
    double front_a = 1.0, front_b = -x(0); // piece on (-inf, pos[l])

    const auto true_a = [&](const Knot& k) { return k.a + static_cast<double>(step - k.birth); };
    const auto true_b = [&](const Knot& k) {
        return k.b - (cum[static_cast<std::size_t>(step)] - cum[static_cast<std::size_t>(k.birth)]);
    };

    Vector lo(d - 1), hi(d - 1);

    for (Index i = 0; i + 1 < d; ++i) {
        const double t = edge_thresholds(i);

        // crossing of -t, scanning pieces left to right
        double ca = front_a, cb = front_b;
        while (l <= r) {
            const Knot& k = knots[static_cast<std::size_t>(l)];
            if (ca * k.pos + cb >= -t) break;
            ca = true_a(k);
            cb = true_b(k);
            ++l;
        }
        const double lo_i = (-t - cb) / ca;

        // crossing of +t, scanning from the right; fall back to the piece
        // that contains lo when the deque empties
        double ha = ca, hb = cb;
        while (l <= r) {
            const Knot& k = knots[static_cast<std::size_t>(r)];
            const double ka = true_a(k);
            const double kb = true_b(k);
            if (ka * k.pos + kb <= t) {
                ha = ka;
                hb = kb;
                break;
            }
            --r;
        }
        const double hi_i = (t - hb) / ha;

        lo(i) = lo_i;
        hi(i) = hi_i;

        // clip and absorb the next data term
        --l;
        knots[static_cast<std::size_t>(l)] = {lo_i, ca, cb, step};
        ++r;
        knots[static_cast<std::size_t>(r)] = {hi_i, 0.0, t, step};
        ++step;
        front_a = 1.0;
        front_b = -t - x(i + 1);
    }

    // minimize the final value function
    double ca = front_a, cb = front_b;
    while (l <= r) {
        const Knot& k = knots[static_cast<std::size_t>(l)];
        if (ca * k.pos + cb >= 0.0) break;
        ca = true_a(k);
        cb = true_b(k);
        ++l;
    }

    Vector z(d);
    z(d - 1) = -cb / ca;
    for (Index i = d - 2; i >= 0; --i)
        z(i) = std::min(std::max(z(i + 1), lo(i)), hi(i));
    return z;
}

} // namespace glmkit
