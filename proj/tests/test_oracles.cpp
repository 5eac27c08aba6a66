#include "doctest.h"

#include "cgalp/oracles.hpp"
#include "cgalp/prox.hpp"
#include "cgalp/random.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace cgalp;

namespace {

Vector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
    Vector v(n);
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r * c; ++i) m.data()[i] = rng.normal();
    return m;
}

}  // namespace

TEST_CASE("l1 ball lmo examples") {
    CHECK(lmo_l1_ball(1.0, make_vector({3, -1})) == make_vector({-1, 0}));
    CHECK(lmo_l1_ball(2.0, make_vector({0.5, -4})) == make_vector({0, 2}));
    CHECK(lmo_l1_ball(1.0, make_vector({0, 0})) == make_vector({1, 0}));
    CHECK(lmo_l1_ball(1.0, make_vector({-2, 2})) == make_vector({1, 0}));
    CHECK_THROWS_AS(lmo_l1_ball(0.0, make_vector({1})), std::invalid_argument);
}

TEST_CASE("l1 ball lmo attains the vertex minimum up to dim 8") {
    Rng rng(30);
    for (Eigen::Index n = 1; n <= 8; ++n) {
        const auto verts = oracle::l1_vertices(n, 1.7);
        for (int trial = 0; trial < 100; ++trial) {
            const Vector z = random_vector(rng, n);
            const Vector s = lmo_l1_ball(1.7, z);
            CHECK(s.dot(z) == doctest::Approx(oracle::min_over(verts, z)).epsilon(1e-14));
        }
    }
}

TEST_CASE("nuclear ball lmo examples") {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 3;
    z(1, 1) = 1;
    const Matrix s = lmo_nuclear_ball(1.0, z);
    CHECK(std::abs(s(0, 0) + 1.0) < 1e-9);
    CHECK(std::abs(s(1, 1)) < 1e-9);
    CHECK(lmo_nuclear_ball(1.0, Matrix::Zero(3, 2)).norm() == 0.0);

    const Vector a = make_vector({1, 2});
    const Vector b = make_vector({-1, 0, 1});
    const Matrix r1 = a * b.transpose();
    const Matrix s1 = lmo_nuclear_ball(2.0, r1);
    CHECK((s1 + 2.0 * r1 / r1.norm()).norm() < 1e-9);
}

TEST_CASE("nuclear ball lmo reaches -delta * sigma_max on random 6x6") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix z = random_matrix(rng, 6, 6);
        const double delta = 0.5 + rng.uniform();
        const Matrix s = lmo_nuclear_ball(delta, z);
        const double sigma = oracle::jacobi_svd(z).S[0];
        CHECK((s.array() * z.array()).sum() == doctest::Approx(-delta * sigma).epsilon(1e-6));
        CHECK(oracle::nuclear_norm(s) == doctest::Approx(delta).epsilon(1e-9));
    }
}

TEST_CASE("box lmo examples") {
    const Vector lo = make_vector({-1, 0});
    const Vector hi = make_vector({2, 3});
    CHECK(lmo_box(lo, hi, make_vector({1, -1})) == make_vector({-1, 3}));
    CHECK(lmo_box(lo, hi, make_vector({0, 0})) == lo);
    CHECK_THROWS_AS(lmo_box(lo, hi, make_vector({1})), DimensionError);
    CHECK_THROWS(box_oracle(hi, lo));
}

TEST_CASE("box lmo attains the corner minimum in R^4") {
    Rng rng(32);
    const Vector lo = make_vector({-1, -2, 0.5, -0.1});
    const Vector hi = make_vector({1, 0, 3, 0.1});
    const auto corners = oracle::box_corners(lo, hi);
    CHECK(corners.size() == 16);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector z = random_vector(rng, 4);
        CHECK(lmo_box(lo, hi, z).dot(z) == doctest::Approx(oracle::min_over(corners, z)).epsilon(1e-14));
    }
}

TEST_CASE("oracle outputs are members of their sets (1000 inputs)") {
    Rng rng(33);
    const LmoFriendly l1 = l1_ball_oracle(5, 0.8);
    const LmoFriendly nuc = nuclear_ball_oracle(3, 4, 1.3);
    const LmoFriendly box = box_oracle(make_vector({-1, 0, 2}), make_vector({0, 1, 2.5}));
    for (int trial = 0; trial < 1000; ++trial) {
        CHECK(l1.membership(l1.lmo(random_vector(rng, 5, 3.0)), 1e-9));
        CHECK(nuc.membership(nuc.lmo(random_vector(rng, 12, 3.0)), 1e-9));
        CHECK(box.membership(box.lmo(random_vector(rng, 3, 3.0)), 1e-9));
    }
    CHECK(l1.membership(l1.a_feasible_point, 0.0));
    CHECK(nuc.membership(nuc.a_feasible_point, 0.0));
    CHECK(box.membership(box.a_feasible_point, 0.0));
    CHECK(std::isinf(l1.value(make_vector({1, 0, 0, 0, 0}))));
    CHECK(l1.value(make_vector({0.8, 0, 0, 0, 0})) == 0.0);
}

TEST_CASE("lmo is invariant under positive scaling of z") {
    Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector z = random_vector(rng, 6);
        const double t = 0.01 + 10.0 * rng.uniform();
        CHECK(lmo_l1_ball(1.0, t * z) == lmo_l1_ball(1.0, z));
        const Matrix zm = unflatten(z, 2, 3);
        CHECK((lmo_nuclear_ball(1.0, t * zm) - lmo_nuclear_ball(1.0, zm)).norm() < 1e-8);
        const Vector lo = -Vector::Ones(6), hi = Vector::Ones(6);
        CHECK(lmo_box(lo, hi, t * z) == lmo_box(lo, hi, z));
    }
}

TEST_CASE("oracle diameter bounds cover pairs of lmo outputs") {
    Rng rng(35);
    const LmoFriendly nuc = nuclear_ball_oracle(3, 3, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector s1 = nuc.lmo(random_vector(rng, 9));
        const Vector s2 = nuc.lmo(random_vector(rng, 9));
        CHECK((s1 - s2).norm() <= nuc.diameter_bound + 1e-9);
    }
}
