#pragma once

#include "cgalp/linalg.hpp"
#include "cgalp/oracles.hpp"
#include "cgalp/prox.hpp"
#include "cgalp/schedule.hpp"

#include <cstdint>
#include <functional>

namespace cgalp {

/// min f(x) + g(Tx) + h(x)  subject to  Ax = b.
///
/// f is differentiable, g is prox-friendly, h is reached through its linear
/// minimization oracle over the compact set C = dom h.
struct CompositeProblem {
    std::function<double(const Vector&)> f_value;
    std::function<Vector(const Vector&)> f_grad;
    ProxFriendly g;
    LinearMap T = LinearMap::zero(1, 1);
    LmoFriendly h;
    LinearMap A = LinearMap::zero(1, 1);
    Vector b;

    Eigen::Index dim() const { return A.in_dim(); }

    /// Throws DimensionError on inconsistent shapes and std::invalid_argument
    /// if h's feasible point is outside C.
    void validate() const;
};

/// Membership tolerance used when h is evaluated inside objective functions.
inline constexpr double kDomainTolerance = 1e-9;

/// f(x) + g(Tx) + h(x).
double objective(const CompositeProblem& p, const Vector& x);

double feasibility_gap(const CompositeProblem& p, const Vector& x);

/// f(x) + g(Tx) + h(x) + <mu, Ax - b>; +infinity outside C.
double lagrangian(const CompositeProblem& p, const Vector& x, const Vector& mu);

/// Smoothed augmented Lagrangian at iteration k:
/// f(x) + g^{beta_k}(Tx) + h(x) + <mu, Ax - b> + rho_k/2 |Ax - b|^2.
double smoothed_lagrangian(const CompositeProblem& p, const ParameterSchedule& s, std::int64_t k,
                           const Vector& x, const Vector& mu);

/// Gradient in x of the smooth part of the smoothed augmented Lagrangian:
/// grad f(x) + T*(Tx - y)/beta_k + A* mu + rho_k A*(Ax - b), y = prox_{beta_k g}(Tx).
Vector smoothed_gradient(const CompositeProblem& p, const ParameterSchedule& s, std::int64_t k,
                         const Vector& x, const Vector& mu);

/// Lipschitz modulus of the penalty part of the smoothed gradient,
/// |T|^2 / beta_k + |A|^2 rho_k.
double penalty_smoothness(double t_norm, double a_norm, const ParameterSchedule& s, std::int64_t k);

/// Largest relative error between f_grad and central differences of f_value
/// (step 1e-6) over points of C drawn from randomized oracle probes.
double gradient_check(const CompositeProblem& p, int samples, std::uint64_t seed);

/// Orthogonal projection of mu onto ran(A).
Vector project_onto_range(const LinearMap& a, const Vector& mu);

/// Lower estimate of the curvature constant
///   sup_{x, s in C, gamma in ]0,1]}  D_f(x + gamma (s - x), x) / zeta(gamma)
/// from randomized oracle probes. Extending `samples` under a fixed seed only
/// adds candidates, so the estimate is nondecreasing in `samples`.
double curvature_estimate(const std::function<double(const Vector&)>& f_value,
                          const std::function<Vector(const Vector&)>& f_grad, const LmoFriendly& h,
                          const std::function<double(double)>& zeta, int samples, std::uint64_t seed);

}  // namespace cgalp
