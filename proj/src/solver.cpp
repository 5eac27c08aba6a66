#include "cgalp/solver.hpp"

#include <chrono>

namespace cgalp {

namespace {

std::string at(std::int64_t k) { return " at iteration " + std::to_string(k); }

}  // namespace

SolverState initial_state(const CompositeProblem& p) {
    return initial_state(p, p.h.a_feasible_point, Vector::Zero(p.A.out_dim()));
}

SolverState initial_state(const CompositeProblem& p, const Vector& x0, const Vector& mu0) {
    if (x0.size() != p.dim()) throw DimensionError("initial_state: x0 has the wrong dimension");
    if (mu0.size() != p.A.out_dim()) throw DimensionError("initial_state: mu0 has the wrong dimension");
    SolverState st;
    st.x = x0;
    st.mu = mu0;
    st.x_erg_feas = x0;
    st.x_erg_opt = x0;
    return st;
}

StepTrace cgalp_step(const CompositeProblem& p, const ParameterSchedule& s, SolverState& st,
                     const Vector* reference_mu) {
    const std::int64_t k = st.k;
    const double gamma = s.gamma(k);
    const double beta = s.beta(k);
    const double rho = s.rho_at(k);

    StepTrace tr;
    tr.k = k;
    const Vector tx = p.T.apply(st.x);
    try {
        tr.y = p.g.prox(beta, tx);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("prox failed") + at(k) + ": " + e.what());
    }
    const Vector residual = p.A.apply(st.x) - p.b;
    tr.z = p.f_grad(st.x) + p.T.apply_adjoint(tx - tr.y) / beta + p.A.apply_adjoint(st.mu) +
           rho * p.A.apply_adjoint(residual);
    if (!all_finite(tr.z)) throw SolverDiverged("non-finite direction" + at(k), st);
    try {
        tr.s = p.h.lmo(tr.z);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("lmo failed") + at(k) + ": " + e.what());
    }

    Vector x_next = st.x - gamma * (st.x - tr.s);
    const Vector residual_next = p.A.apply(x_next) - p.b;
    Vector mu_next = st.mu + s.theta(k) * residual_next;
    if (!all_finite(x_next) || !all_finite(mu_next)) throw SolverDiverged("non-finite iterate" + at(k), st);

    const double sum_next = st.gamma_sum + gamma;
    const double w_old = st.gamma_sum / sum_next;
    const double w_new = gamma / sum_next;
    st.x_erg_feas = w_old * st.x_erg_feas + w_new * st.x;
    st.x_erg_opt = w_old * st.x_erg_opt + w_new * x_next;
    st.gamma_sum = sum_next;
    st.x = std::move(x_next);
    st.mu = std::move(mu_next);
    st.k = k + 1;

    tr.feas_gap = residual_next.norm();
    if (reference_mu) tr.lagrangian_at_mustar = lagrangian(p, st.x, *reference_mu);
    return tr;
}

RunResult run(const CompositeProblem& p, const ParameterSchedule& s, SolverState start, const RunOptions& options) {
    RunResult result;
    result.state = std::move(start);
    const Vector* ref = options.reference_mu ? &*options.reference_mu : nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < options.max_iters; ++i) {
        StepTrace tr = cgalp_step(p, s, result.state, ref);
        if (options.check_membership && !p.h.membership(result.state.x, options.membership_tol))
            ++result.membership_failures;
        const bool keep_going = !options.on_step || options.on_step(result.state, tr);
        if (options.trace_stride > 0 && tr.k % options.trace_stride == 0) result.traces.push_back(std::move(tr));
        if (!keep_going) {
            result.stopped_early = true;
            break;
        }
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace cgalp
