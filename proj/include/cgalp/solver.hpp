#pragma once

#include "cgalp/problem.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgalp {

struct SolverState {
    std::int64_t k = 0;
    Vector x;
    Vector mu;
    /// Sum of the step sizes taken so far.
    double gamma_sum = 0.0;
    /// sum gamma_i x_i / gamma_sum: the average the feasibility rate is stated for.
    Vector x_erg_feas;
    /// sum gamma_i x_{i+1} / gamma_sum: the average the Lagrangian rate is stated for.
    Vector x_erg_opt;
};

/// Intermediates of one iteration.
struct StepTrace {
    std::int64_t k = 0;
    Vector y;
    Vector z;
    Vector s;
    /// |A x_{k+1} - b|
    double feas_gap = 0.0;
    /// L(x_{k+1}, mu*) when a reference multiplier was supplied.
    std::optional<double> lagrangian_at_mustar;
};

/// Thrown when an iterate, multiplier or direction stops being finite.
/// Carries the last state whose entries were all finite.
class SolverDiverged : public std::runtime_error {
public:
    SolverDiverged(const std::string& what, SolverState last_good)
        : std::runtime_error(what), last_good_(std::move(last_good)) {}
    const SolverState& last_good() const { return last_good_; }

private:
    SolverState last_good_;
};

/// x0 = h.a_feasible_point, mu0 = 0.
SolverState initial_state(const CompositeProblem& p);
/// Caller guarantees x0 in C and mu0 in ran(A).
SolverState initial_state(const CompositeProblem& p, const Vector& x0, const Vector& mu0);

/// One iteration:
///   y = prox_{beta_k g}(T x)
///   z = grad f(x) + T*(Tx - y)/beta_k + A* mu + rho_k A*(Ax - b)
///   s = lmo(z)
///   x+ = x - gamma_k (x - s)
///   mu+ = mu + theta_k (A x+ - b)
/// Oracle failures are rethrown as std::runtime_error naming the iteration.
StepTrace cgalp_step(const CompositeProblem& p, const ParameterSchedule& s, SolverState& st,
                     const Vector* reference_mu = nullptr);

struct RunOptions {
    std::int64_t max_iters = 0;
    /// Keep every trace_stride-th StepTrace in the result; 0 keeps none.
    std::int64_t trace_stride = 0;
    std::optional<Vector> reference_mu;
    /// Check x_k against C after each step and count failures.
    bool check_membership = true;
    double membership_tol = 1e-9;
    /// Called after every step; returning false stops the run.
    std::function<bool(const SolverState&, const StepTrace&)> on_step;
};

struct RunResult {
    SolverState state;
    std::vector<StepTrace> traces;
    std::int64_t membership_failures = 0;
    bool stopped_early = false;
    double wall_seconds = 0.0;
};

RunResult run(const CompositeProblem& p, const ParameterSchedule& s, SolverState start, const RunOptions& options);

}  // namespace cgalp
