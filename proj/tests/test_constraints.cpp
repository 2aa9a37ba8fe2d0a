#include "glmkit/constraint.hpp"
#include "glmkit/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace glmkit;

namespace {

std::vector<ConstraintSpec> convex_specs() {
    std::vector<ConstraintSpec> out;
    out.push_back({ConstraintKind::positive});
    ConstraintSpec box;
    box.kind = ConstraintKind::box;
    box.lower = -0.5;
    box.upper = 1.0;
    out.push_back(box);
    out.push_back({ConstraintKind::simplex});
    ConstraintSpec l1;
    l1.kind = ConstraintKind::l1_ball;
    l1.radius = 1.5;
    out.push_back(l1);
    ConstraintSpec l2;
    l2.kind = ConstraintKind::l2_ball;
    l2.radius = 1.2;
    out.push_back(l2);
    ConstraintSpec iso;
    iso.kind = ConstraintKind::isotonic;
    out.push_back(iso);
    ConstraintSpec lin;
    lin.kind = ConstraintKind::linear_equality;
    lin.A.resize(1, 4);
    lin.A << 1, 1, 1, 1;
    lin.b = Vector::Constant(1, 2.0);
    out.push_back(lin);
    return out;
}

Matrix random_point(std::mt19937_64& rng, Index d = 4) {
    std::normal_distribution<double> g;
    Matrix x(d, 1);
    for (Index i = 0; i < d; ++i) x(i) = g(rng);
    return x;
}

// feasible sample for the variational-inequality check
Matrix feasible_point(const ConstraintSpec& spec, std::mt19937_64& rng) {
    return project(spec, random_point(rng));
}

} // namespace

TEST_SUITE("constraints") {

TEST_CASE("projection examples") {
    Matrix x(2, 1);
    x << -1, 2;
    const Matrix pos = project({ConstraintKind::positive}, x);
    CHECK(pos(0, 0) == doctest::Approx(0.0));
    CHECK(pos(1, 0) == doctest::Approx(2.0));

    Matrix s(2, 1);
    s << 1, 1;
    const Matrix sp = project({ConstraintKind::simplex}, s);
    CHECK(sp(0, 0) == doctest::Approx(0.5));
    CHECK(sp(1, 0) == doctest::Approx(0.5));

    Matrix iso_in(3, 1);
    iso_in << 3, 1, 2;
    ConstraintSpec iso;
    iso.kind = ConstraintKind::isotonic;
    const Matrix iso_out = project(iso, iso_in);
    CHECK(iso_out(0, 0) == doctest::Approx(2.0));
    CHECK(iso_out(1, 0) == doctest::Approx(2.0));
    CHECK(iso_out(2, 0) == doctest::Approx(2.0));

    ConstraintSpec l1;
    l1.kind = ConstraintKind::l1_ball;
    l1.radius = 10.0;
    Matrix inside(3, 1);
    inside << 1, -2, 3; // ||.||_1 = 6
    CHECK((project(l1, inside) - inside).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    ConstraintSpec sparse;
    sparse.kind = ConstraintKind::sparse;
    sparse.max_card = 1;
    Matrix sx(2, 1);
    sx << 3, -1;
    const Matrix sz = project(sparse, sx);
    CHECK(sz(0, 0) == doctest::Approx(3.0));
    CHECK(sz(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("simplex projection matches the enumeration oracle") {
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix x = random_point(rng);
        const Matrix z = project({ConstraintKind::simplex}, x);
        const Vector expected = oracles::simplex_oracle(x.col(0));
        CHECK((z.col(0) - expected).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(z.col(0).sum() == doctest::Approx(1.0));
        CHECK(z.minCoeff() >= -1e-15);
    }
}

TEST_CASE("isotonic projection matches the partition oracle") {
    std::mt19937_64 rng(223);
    ConstraintSpec iso;
    iso.kind = ConstraintKind::isotonic;
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix x = random_point(rng, 6);
        const Matrix z = project(iso, x);
        const Vector expected = oracles::isotonic_oracle(x.col(0));
        CHECK((z.col(0) - expected).cwiseAbs().maxCoeff() < 1e-6);
        for (Index i = 0; i + 1 < z.rows(); ++i) CHECK(z(i, 0) <= z(i + 1, 0) + 1e-12);
    }
}

TEST_CASE("idempotence for every kind") {
    std::mt19937_64 rng(227);
    auto specs = convex_specs();
    ConstraintSpec sparse;
    sparse.kind = ConstraintKind::sparse;
    sparse.max_card = 2;
    specs.push_back(sparse);
    for (const auto& spec : specs) {
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix x = random_point(rng);
            const Matrix once = project(spec, x);
            const Matrix twice = project(spec, once);
            CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    // rank on matrices
    ConstraintSpec rank;
    rank.kind = ConstraintKind::rank;
    rank.max_card = 1;
    std::normal_distribution<double> g;
    Matrix m(3, 3);
    for (Index i = 0; i < m.size(); ++i) m(i) = g(rng);
    const Matrix once = project(rank, m);
    CHECK((project(rank, once) - once).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("variational inequality for convex kinds") {
    std::mt19937_64 rng(229);
    for (const auto& spec : convex_specs()) {
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix x = random_point(rng);
            const Matrix px = project(spec, x);
            for (int zi = 0; zi < 10; ++zi) {
                const Matrix z = feasible_point(spec, rng);
                const double ip = ((x - px).cwiseProduct(z - px)).sum();
                CHECK(ip <= 1e-8);
            }
        }
    }
}

TEST_CASE("rank projection beats random rank-K candidates") {
    std::mt19937_64 rng(233);
    std::normal_distribution<double> g;
    ConstraintSpec rank;
    rank.kind = ConstraintKind::rank;
    rank.max_card = 2;
    Matrix m(4, 4);
    for (Index i = 0; i < m.size(); ++i) m(i) = g(rng);
    const Matrix z = project(rank, m);

    Eigen::JacobiSVD<Matrix> svd(z);
    Index nonzero = 0;
    for (Index j = 0; j < svd.singularValues().size(); ++j)
        if (svd.singularValues()(j) > 1e-10) ++nonzero;
    CHECK(nonzero <= 2);

    const double dist = (m - z).squaredNorm();
    for (int c = 0; c < 50; ++c) {
        Matrix u(4, 2), v(4, 2);
        for (Index i = 0; i < u.size(); ++i) {
            u(i) = g(rng);
            v(i) = g(rng);
        }
        const Matrix cand = u * v.transpose();
        CHECK(dist <= (m - cand).squaredNorm() + 1e-10);
    }
}

TEST_CASE("sparse ties break by index") {
    ConstraintSpec sparse;
    sparse.kind = ConstraintKind::sparse;
    sparse.max_card = 1;
    Matrix x(3, 1);
    x << 2.0, -2.0, 1.0;
    const Matrix z = project(sparse, x);
    CHECK(z(0, 0) == doctest::Approx(2.0)); // first of the tied pair
    CHECK(z(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("infeasible equality system is rejected") {
    ConstraintSpec lin;
    lin.kind = ConstraintKind::linear_equality;
    lin.A.resize(2, 3);
    lin.A << 1, 0, 0, 1, 0, 0; // rank deficient
    lin.b.resize(2);
    lin.b << 1.0, 2.0; // inconsistent
    Matrix x = Matrix::Zero(3, 1);
    CHECK_THROWS_AS(project(lin, x), InfeasibleError);

    lin.b << 1.0, 1.0; // consistent despite the rank deficiency
    const Matrix z = project(lin, x);
    CHECK(z(0, 0) == doctest::Approx(1.0));
}

} // TEST_SUITE
