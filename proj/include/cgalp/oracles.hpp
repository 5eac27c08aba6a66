#pragma once

#include "cgalp/linalg.hpp"

#include <functional>

namespace cgalp {

/// The nonsmooth term h, accessed only through its linearly perturbed
/// minimization oracle  s in Argmin_s h(s) + <z, s>  over its compact domain C.
struct LmoFriendly {
    std::function<Vector(const Vector&)> lmo;
    std::function<bool(const Vector&, double)> membership;
    /// h restricted to C; the shipped oracles are indicators, so this is 0.
    std::function<double(const Vector&)> value_on_domain;
    double diameter_bound = 0.0;
    Vector a_feasible_point;

    /// h(x), +infinity outside C (membership at the given tolerance).
    double value(const Vector& x, double tol = 1e-9) const;
};

/// Vertex of the l1 ball minimizing <z, .>: -delta * sign(z_i) e_i for the
/// first i maximizing |z_i|. For z = 0 returns +delta e_0.
Vector lmo_l1_ball(double delta, const Vector& z);

struct NuclearLmoOptions {
    double rel_tol = 1e-9;
    int max_power_iters = 100;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    int gram_squarings = 12;
};

/// -delta * u v^T from the leading singular pair of Z. Returns the zero matrix
/// for Z = 0. Power iteration stalls when the top singular values nearly tie;
/// after max_power_iters it falls back to a dense SVD.
Matrix lmo_nuclear_ball(double delta, const Matrix& z, const NuclearLmoOptions& options = {});

/// Corner of the box: lo_i where z_i >= 0, hi_i where z_i < 0.
Vector lmo_box(const Vector& lo, const Vector& hi, const Vector& z);

// Oracle bundles for the indicator of each set.
LmoFriendly l1_ball_oracle(Eigen::Index dim, double delta);
LmoFriendly nuclear_ball_oracle(Eigen::Index rows, Eigen::Index cols, double delta,
                                NuclearLmoOptions options = {});
LmoFriendly box_oracle(Vector lo, Vector hi);

}  // namespace cgalp
