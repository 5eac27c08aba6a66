#pragma once

#include "cgalp/gfb.hpp"
#include "cgalp/problem.hpp"

#include <cstdint>

namespace cgalp::bench {

/// Projection of y onto the l1 unit ball intersected with ker(A), A = u v^T a
/// rank-one 2x2 matrix:
///   min 1/2 |x - y|^2  s.t.  |x|_1 <= 1,  A x = 0.
struct ProjectionInstance {
    CompositeProblem problem;
    Matrix A;
    Vector u;
    Vector v;
    Vector y;
};

/// u and v are normalized Gaussian draws; y is drawn uniformly from [-2, 2]^2
/// until it lies outside the l1 ball and outside ker(A) (|Ay| > 1e-6).
ProjectionInstance gen_projection_instance(std::uint64_t seed);

struct MatcompInstance {
    MatcompData data;
    Matrix X0;
    Vector y_tilde;
};

/// y_tilde has floor(N/5) nonzeros uniform in [-1, 1] at uniformly chosen
/// positions; X0 = y_tilde y_tilde^T; the mask keeps floor(density N^2)
/// entries drawn without replacement; y = Omega X0;
/// delta1 = |X0|_* / 2, delta2 = |X0|_1 / 2.
MatcompInstance gen_matcomp_instance(Eigen::Index n, double density, std::uint64_t seed);

/// Two-block lift of the matrix-completion problem for CGALP: block 1 lives
/// in the nuclear ball, block 2 in the l1 ball, each carries |Omega X - y|_1 / 2.
CompositeProblem matcomp_cgalp_problem(const MatcompData& d, NuclearLmoOptions lmo_options = {});

}  // namespace cgalp::bench
