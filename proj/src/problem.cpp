#include "cgalp/problem.hpp"

#include "cgalp/random.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgalp {

void CompositeProblem::validate() const {
    if (!f_value || !f_grad) throw std::invalid_argument("CompositeProblem: f oracles missing");
    if (!g.value || !g.prox) throw std::invalid_argument("CompositeProblem: g oracles missing");
    if (!h.lmo || !h.membership) throw std::invalid_argument("CompositeProblem: h oracles missing");
    if (T.in_dim() != A.in_dim()) throw DimensionError("CompositeProblem: T and A must share the primal space");
    if (b.size() != A.out_dim()) throw DimensionError("CompositeProblem: b must have A.out_dim entries");
    if (h.a_feasible_point.size() != dim())
        throw DimensionError("CompositeProblem: feasible point has the wrong dimension");
    if (!h.membership(h.a_feasible_point, kDomainTolerance))
        throw std::invalid_argument("CompositeProblem: a_feasible_point is not in C");
}

double objective(const CompositeProblem& p, const Vector& x) {
    const double hx = p.h.value(x, kDomainTolerance);
    if (!std::isfinite(hx)) return std::numeric_limits<double>::infinity();
    return p.f_value(x) + p.g.value(p.T.apply(x)) + hx;
}

double feasibility_gap(const CompositeProblem& p, const Vector& x) { return (p.A.apply(x) - p.b).norm(); }

double lagrangian(const CompositeProblem& p, const Vector& x, const Vector& mu) {
    const double phi = objective(p, x);
    if (!std::isfinite(phi)) return phi;
    return phi + inner(mu, p.A.apply(x) - p.b);
}

double smoothed_lagrangian(const CompositeProblem& p, const ParameterSchedule& s, std::int64_t k,
                           const Vector& x, const Vector& mu) {
    const double hx = p.h.value(x, kDomainTolerance);
    if (!std::isfinite(hx)) return std::numeric_limits<double>::infinity();
    const Vector residual = p.A.apply(x) - p.b;
    return p.f_value(x) + moreau_value(p.g, s.beta(k), p.T.apply(x)) + hx + inner(mu, residual) +
           0.5 * s.rho_at(k) * residual.squaredNorm();
}

Vector smoothed_gradient(const CompositeProblem& p, const ParameterSchedule& s, std::int64_t k,
                         const Vector& x, const Vector& mu) {
    const double beta = s.beta(k);
    const Vector tx = p.T.apply(x);
    const Vector y = p.g.prox(beta, tx);
    const Vector residual = p.A.apply(x) - p.b;
    return p.f_grad(x) + p.T.apply_adjoint(tx - y) / beta + p.A.apply_adjoint(mu + s.rho_at(k) * residual);
}

double penalty_smoothness(double t_norm, double a_norm, const ParameterSchedule& s, std::int64_t k) {
    return t_norm * t_norm / s.beta(k) + a_norm * a_norm * s.rho_at(k);
}

namespace {

Vector random_direction(Rng& rng, Eigen::Index dim) {
    Vector z(dim);
    for (auto& v : z) v = rng.normal();
    return z;
}

// A point of C: either an oracle vertex or a point on the segment between two.
Vector sample_domain_point(const LmoFriendly& h, Rng& rng, Eigen::Index dim) {
    const Vector p1 = h.lmo(random_direction(rng, dim));
    const Vector p2 = h.lmo(random_direction(rng, dim));
    const double coin = rng.uniform();
    const double t = rng.uniform();
    return coin < 0.5 ? p1 : Vector(p1 + t * (p2 - p1));
}

}  // namespace

double gradient_check(const CompositeProblem& p, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index dim = p.dim();
    constexpr double step = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Vector x = sample_domain_point(p.h, rng, dim);
        const Vector grad = p.f_grad(x);
        Vector fd(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double keep = x[j];
            x[j] = keep + step;
            const double up = p.f_value(x);
            x[j] = keep - step;
            const double down = p.f_value(x);
            x[j] = keep;
            fd[j] = (up - down) / (2.0 * step);
        }
        worst = std::max(worst, (grad - fd).norm() / std::max(grad.norm(), 1.0));
    }
    return worst;
}

Vector project_onto_range(const LinearMap& a, const Vector& mu) {
    if (mu.size() != a.out_dim()) throw DimensionError("project_onto_range: mu must live in the range space");
    const Matrix dense = a.to_dense();
    Eigen::JacobiSVD<Matrix> svd(dense, Eigen::ComputeThinU);
    const Vector& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma[0] == 0.0) return Vector::Zero(mu.size());
    const double cutoff = sigma[0] * static_cast<double>(std::max(dense.rows(), dense.cols())) *
                          std::numeric_limits<double>::epsilon();
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma[rank] > cutoff) ++rank;
    const auto basis = svd.matrixU().leftCols(rank);
    return basis * (basis.transpose() * mu);
}

double curvature_estimate(const std::function<double(const Vector&)>& f_value,
                          const std::function<Vector(const Vector&)>& f_grad, const LmoFriendly& h,
                          const std::function<double(double)>& zeta, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("curvature_estimate: samples must be >= 1");
    Rng rng(seed);
    const Eigen::Index dim = h.a_feasible_point.size();
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Vector x = sample_domain_point(h, rng, dim);
        const Vector s = h.lmo(random_direction(rng, dim));
        const double gamma = 1.0 - rng.uniform();  // ]0, 1]
        const double z = zeta(gamma);
        if (!(z > 0.0)) continue;
        const Vector moved = x + gamma * (s - x);
        const double bregman = f_value(moved) - f_value(x) - inner(f_grad(x), moved - x);
        best = std::max(best, bregman / z);
    }
    return best;
}

}  // namespace cgalp
