#pragma once

#include "cgalp/linalg.hpp"

#include <array>
#include <cstdint>

namespace cgalp {

/// Matrix completion with an l1 data term:
///   min |Omega X - y|_1  s.t.  |X|_* <= delta1,  |X|_1 <= delta2.
struct MatcompData {
    MaskOperator mask;
    Vector y;  // observations, ordered like mask.kept_indices()
    double delta1 = 0.0;
    double delta2 = 0.0;

    Eigen::Index n() const { return mask.n(); }
};

/// |Omega X - y|_1
double matcomp_data_fit(const MatcompData& d, const Matrix& x);

/// Three-block generalized forward-backward state. The blocks correspond to
/// the data term, the nuclear ball and the l1 ball.
struct GfbState {
    std::int64_t k = 0;
    std::array<Matrix, 3> Z;
    std::array<Matrix, 3> W;
    std::array<Matrix, 3> U;
    /// (U_0 + ... + U_k) / (k + 1) with U_0 = 0.
    std::array<Matrix, 3> U_erg;
};

/// All blocks zero.
GfbState gfb_initial_state(const MatcompData& d);

/// One iteration with unit step and relaxation, V_i = 2W_i - Z_i:
///   U_1 = V_1 + Omega*(y - Omega V_1 + soft_1(Omega V_1 - y))
///   U_2 = projection of V_2 on the nuclear ball
///   U_3 = projection of V_3 on the l1 ball
///   Z <- Z + U - W,  W_i <- mean_j Z_j
void gfb_step(const MatcompData& d, GfbState& st);

/// Q(U) = |Omega U_1 - y|_1 + i_nuc(U_2) + i_l1(U_3), with the ball
/// indicators evaluated at relative tolerance `tol`.
double gfb_objective(const MatcompData& d, const std::array<Matrix, 3>& u, double tol = 1e-9);

/// Q(U) - Q(W*) - <v*, U - W*>, v* = (W* - Z*) / gamma. Returns +infinity
/// when a ball block of U is infeasible beyond the tolerance.
double gfb_bregman_criterion(const MatcompData& d, const std::array<Matrix, 3>& u, const std::array<Matrix, 3>& w_star,
                             const std::array<Matrix, 3>& z_star, double gamma = 1.0, double tol = 1e-9);

/// Block mean of a three-block variable.
Matrix mean_block(const std::array<Matrix, 3>& blocks);

}  // namespace cgalp
