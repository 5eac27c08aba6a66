#include "cgalp/gfb.hpp"

#include "cgalp/prox.hpp"

#include <cmath>
#include <limits>

namespace cgalp {

double matcomp_data_fit(const MatcompData& d, const Matrix& x) {
    return (d.mask.apply(flatten(x)) - d.y).lpNorm<1>();
}

Matrix mean_block(const std::array<Matrix, 3>& blocks) { return (blocks[0] + blocks[1] + blocks[2]) / 3.0; }

GfbState gfb_initial_state(const MatcompData& d) {
    GfbState st;
    const Matrix zero = Matrix::Zero(d.n(), d.n());
    st.Z.fill(zero);
    st.W.fill(zero);
    st.U.fill(zero);
    st.U_erg.fill(zero);
    return st;
}

void gfb_step(const MatcompData& d, GfbState& st) {
    const Eigen::Index n = d.n();
    std::array<Matrix, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = 2.0 * st.W[i] - st.Z[i];

    const Vector flat = flatten(v[0]);
    const Vector omega_v = d.mask.apply(flat);
    const Vector correction = d.y - omega_v + prox_l1(1.0, omega_v - d.y);
    st.U[0] = unflatten(flat + d.mask.apply_adjoint(correction), n, n);
    st.U[1] = project_nuclear_ball(d.delta1, v[1]);
    st.U[2] = unflatten(project_l1_ball(d.delta2, flatten(v[2])), n, n);

    for (int i = 0; i < 3; ++i) st.Z[i] += st.U[i] - st.W[i];
    const Matrix mean = mean_block(st.Z);
    st.W.fill(mean);

    const double kk = static_cast<double>(st.k);
    for (int i = 0; i < 3; ++i) st.U_erg[i] = (kk + 1.0) / (kk + 2.0) * st.U_erg[i] + st.U[i] / (kk + 2.0);
    ++st.k;
}

double gfb_objective(const MatcompData& d, const std::array<Matrix, 3>& u, double tol) {
    if (nuclear_norm(u[1]) > d.delta1 + tol * (1.0 + d.delta1)) return std::numeric_limits<double>::infinity();
    if (u[2].lpNorm<1>() > d.delta2 + tol * (1.0 + d.delta2)) return std::numeric_limits<double>::infinity();
    return matcomp_data_fit(d, u[0]);
}

double gfb_bregman_criterion(const MatcompData& d, const std::array<Matrix, 3>& u, const std::array<Matrix, 3>& w_star,
                             const std::array<Matrix, 3>& z_star, double gamma, double tol) {
    const double q_u = gfb_objective(d, u, tol);
    if (!std::isfinite(q_u)) return q_u;
    double linear = 0.0;
    for (int i = 0; i < 3; ++i) linear += ((w_star[i] - z_star[i]) / gamma).cwiseProduct(u[i] - w_star[i]).sum();
    return q_u - gfb_objective(d, w_star, tol) - linear;
}

}  // namespace cgalp
