#include "cgalp/bench/experiment.hpp"

#include "cgalp/bench/instances.hpp"
#include "cgalp/bench/rate_fit.hpp"
#include "cgalp/bench/reference_cache.hpp"
#include "cgalp/gfb.hpp"
#include "cgalp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <future>
#include <mutex>
#include <thread>

namespace cgalp::bench {

using nlohmann::json;

std::string to_string(Experiment e) { return e == Experiment::projection ? "projection" : "matcomp"; }

Experiment parse_experiment(const std::string& name) {
    if (name == "projection") return Experiment::projection;
    if (name == "matcomp") return Experiment::matcomp;
    throw std::invalid_argument("unknown experiment '" + name + "' (expected projection or matcomp)");
}

void ExperimentConfig::validate() const {
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
    if (iters < 1) throw std::invalid_argument("iters must be positive");
    if (iters > ref_iters) throw std::invalid_argument("iters must not exceed ref_iters");
    if (experiment == Experiment::matcomp && n < 5) throw std::invalid_argument("matcomp needs N >= 5");
}

ParameterSchedule projection_reference_schedule() { return ParameterSchedule::projection_default(0.0, 1.0 / 3.0 - 0.01); }

namespace {

json vec_to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector json_to_vec(const json& j) {
    const auto raw = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(raw.data(), static_cast<Eigen::Index>(raw.size()));
}

std::string schedule_key(const ParameterSchedule& s) {
    return "a=" + format_double(s.a) + "|b=" + format_double(s.b) + "|delta=" + format_double(s.delta) +
           "|rho=" + format_double(s.rho) + "|c=" + format_double(s.c);
}

json schedule_json(const ParameterSchedule& s) {
    return {{"a", s.a}, {"b", s.b}, {"delta", s.delta}, {"rho", s.rho}, {"c", s.c}};
}

json config_json(const ExperimentConfig& cfg) {
    json j = {{"experiment", to_string(cfg.experiment)},
              {"seed", cfg.seed},
              {"iters", cfg.iters},
              {"ref_iters", cfg.ref_iters},
              {"schedule", schedule_json(cfg.schedule)}};
    if (cfg.experiment == Experiment::matcomp) {
        j["n"] = cfg.n;
        j["density"] = cfg.density;
    }
    return j;
}

std::optional<ReferenceCache> make_cache(const ExperimentConfig& cfg) {
    if (cfg.cache_dir) return ReferenceCache(*cfg.cache_dir);
    if (!cfg.out_dir.empty()) return ReferenceCache(ReferenceCache::default_dir(cfg.out_dir));
    return std::nullopt;
}

/// Loads a reference or computes and stores it.
template <typename Compute>
json cached_reference(const ExperimentConfig& cfg, const std::string& key, Compute compute, bool& from_cache) {
    const auto cache = make_cache(cfg);
    if (cache) {
        if (auto hit = cache->load(key)) {
            from_cache = true;
            return *hit;
        }
    }
    if (!cfg.compute_reference) throw ReferenceMissing("no cached reference for " + key);
    json payload = compute();
    if (cache) cache->store(key, payload);
    from_cache = false;
    return payload;
}

json fit_json(const std::vector<std::int64_t>& k, const std::vector<double>& v, std::int64_t lo, std::int64_t hi) {
    try {
        const RateFit f = fit_rate(k, v, lo, hi);
        return {{"slope", f.slope},        {"intercept", f.intercept},     {"r_squared", f.r_squared},
                {"k_lo", f.k_lo},          {"k_hi", f.k_hi},               {"points_used", f.points_used},
                {"points_excluded", f.points_excluded}};
    } catch (const RateFitError& e) {
        return {{"error", e.what()}, {"k_lo", lo}, {"k_hi", hi}};
    }
}

std::pair<std::int64_t, std::int64_t> fit_window(std::int64_t last_k) {
    return {std::max<std::int64_t>(1, last_k / 100), std::max<std::int64_t>(1, last_k)};
}

json cgalp_fits(const std::vector<CgalpRow>& rows) {
    std::vector<std::int64_t> k;
    std::vector<double> erg_gap, gap, erg_feas, feas;
    for (const auto& r : rows) {
        k.push_back(r.k);
        erg_gap.push_back(r.erg_lagrangian_gap);
        gap.push_back(r.lagrangian_gap);
        erg_feas.push_back(r.erg_feas_gap);
        feas.push_back(r.feas_gap);
    }
    const auto [lo, hi] = fit_window(rows.empty() ? 1 : rows.back().k);
    return {{"erg_lagrangian_gap", fit_json(k, erg_gap, lo, hi)},
            {"lagrangian_gap", fit_json(k, gap, lo, hi)},
            {"erg_feas_gap", fit_json(k, erg_feas, lo, hi)},
            {"feas_gap", fit_json(k, feas, lo, hi)}};
}

struct CgalpTrace {
    std::vector<CgalpRow> rows;
    RunResult result;
};

CgalpTrace trace_cgalp(const CompositeProblem& p, const ParameterSchedule& s, std::int64_t iters, const Vector& x_star,
                       const Vector& mu_star, bool timing) {
    const double l_star = lagrangian(p, x_star, mu_star);
    CgalpTrace out;
    out.rows.reserve(static_cast<std::size_t>(iters));
    const auto t0 = std::chrono::steady_clock::now();
    RunOptions opts;
    opts.max_iters = iters;
    opts.reference_mu = mu_star;
    opts.on_step = [&](const SolverState& st, const StepTrace& tr) {
        CgalpRow row;
        row.k = tr.k;
        row.gamma_k = s.gamma(tr.k);
        row.beta_k = s.beta(tr.k);
        row.feas_gap = tr.feas_gap;
        row.erg_feas_gap = feasibility_gap(p, st.x_erg_feas);
        row.lagrangian_gap = *tr.lagrangian_at_mustar - l_star;
        row.erg_lagrangian_gap = lagrangian(p, st.x_erg_opt, mu_star) - l_star;
        row.mu_norm = st.mu.norm();
        if (timing) row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.rows.push_back(row);
        return true;
    };
    out.result = run(p, s, initial_state(p), opts);
    return out;
}

json cgalp_diagnostics(const CompositeProblem& p, const ParameterSchedule& s, const RunResult& r) {
    const double t_norm = p.T.op_norm_bound() ? *p.T.op_norm_bound() : operator_norm_estimate(p.T, 200);
    const double a_norm = p.A.op_norm_bound() ? *p.A.op_norm_bound() : operator_norm_estimate(p.A, 200);
    const std::int64_t last = std::max<std::int64_t>(0, r.state.k - 1);
    return {{"membership_failures", r.membership_failures},
            {"gamma_sum", r.state.gamma_sum},
            {"final_mu_norm", r.state.mu.norm()},
            {"penalty_smoothness_last", penalty_smoothness(t_norm, a_norm, s, last)},
            {"final_objective", objective(p, r.state.x)},
            {"final_erg_objective", objective(p, r.state.x_erg_opt)}};
}

void write_summary(const std::filesystem::path& path, const json& summary) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << summary.dump(2) << '\n';
}

ExperimentResult run_projection(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.config = cfg;
    const ProjectionInstance inst = gen_projection_instance(cfg.seed);
    const ParameterSchedule ref_s = projection_reference_schedule();
    const std::string key = "v1|projection|seed=" + std::to_string(cfg.seed) + "|" + schedule_key(ref_s) +
                            "|ref_iters=" + std::to_string(cfg.ref_iters);
    const json ref = cached_reference(
        cfg, key,
        [&] {
            RunOptions o;
            o.max_iters = cfg.ref_iters;
            const RunResult r = run(inst.problem, ref_s, initial_state(inst.problem), o);
            return json{{"x_star", vec_to_json(r.state.x)}, {"mu_star", vec_to_json(r.state.mu)}};
        },
        res.reference_from_cache);
    res.x_star = json_to_vec(ref.at("x_star"));
    res.mu_star = json_to_vec(ref.at("mu_star"));

    CgalpTrace tr = trace_cgalp(inst.problem, cfg.schedule, cfg.iters, res.x_star, res.mu_star, cfg.timing);
    res.cgalp_rows = std::move(tr.rows);
    res.membership_failures = tr.result.membership_failures;
    res.x_final = tr.result.state.x;
    res.x_erg_opt = tr.result.state.x_erg_opt;

    res.summary = {{"config", config_json(cfg)},
                   {"reference",
                    {{"from_cache", res.reference_from_cache},
                     {"schedule", schedule_json(ref_s)},
                     {"x_star", vec_to_json(res.x_star)},
                     {"mu_star", vec_to_json(res.mu_star)}}},
                   {"instance", {{"y", vec_to_json(inst.y)}, {"u", vec_to_json(inst.u)}, {"v", vec_to_json(inst.v)}}},
                   {"cgalp", {{"fits", cgalp_fits(res.cgalp_rows)},
                              {"diagnostics", cgalp_diagnostics(inst.problem, cfg.schedule, tr.result)},
                              {"x_final", vec_to_json(res.x_final)}}}};
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_cgalp_csv(cfg.out_dir / "cgalp.csv", res.cgalp_rows);
        write_summary(cfg.out_dir / "summary.json", res.summary);
    }
    return res;
}

struct GfbOutcome {
    std::vector<GfbRow> rows;
    bool from_cache = false;
    double phi = 0.0;
    json fit;
};

GfbOutcome run_gfb_part(const ExperimentConfig& cfg, const MatcompData& d) {
    GfbOutcome out;
    const std::string key = "v1|matcomp-gfb|seed=" + std::to_string(cfg.seed) + "|n=" + std::to_string(cfg.n) +
                            "|density=" + format_double(cfg.density) + "|ref_iters=" + std::to_string(cfg.ref_iters);
    const json ref = cached_reference(
        cfg, key,
        [&] {
            GfbState st = gfb_initial_state(d);
            for (std::int64_t i = 0; i < cfg.ref_iters; ++i) gfb_step(d, st);
            json z = json::array();
            for (const auto& zi : st.Z) z.push_back(vec_to_json(flatten(zi)));
            return json{{"Z_star", z}, {"W_star", vec_to_json(flatten(st.W[0]))}};
        },
        out.from_cache);
    std::array<Matrix, 3> z_star, w_star;
    const Matrix w = unflatten(json_to_vec(ref.at("W_star")), d.n(), d.n());
    for (int i = 0; i < 3; ++i) {
        z_star[i] = unflatten(json_to_vec(ref.at("Z_star").at(i)), d.n(), d.n());
        w_star[i] = w;
    }

    GfbState st = gfb_initial_state(d);
    out.rows.reserve(static_cast<std::size_t>(cfg.iters));
    for (std::int64_t i = 0; i < cfg.iters; ++i) {
        gfb_step(d, st);
        const Matrix mean = mean_block(st.U_erg);
        GfbRow row;
        row.k = st.k;
        row.bregman_criterion = gfb_bregman_criterion(d, st.U_erg, w_star, z_star);
        row.feas_nuc = std::max(0.0, nuclear_norm(mean) - d.delta1);
        row.feas_l1 = std::max(0.0, mean.lpNorm<1>() - d.delta2);
        out.rows.push_back(row);
    }
    out.phi = matcomp_data_fit(d, mean_block(st.U_erg));
    std::vector<std::int64_t> k;
    std::vector<double> v;
    for (const auto& r : out.rows) {
        k.push_back(r.k);
        v.push_back(r.bregman_criterion);
    }
    const auto [lo, hi] = fit_window(cfg.iters);
    out.fit = fit_json(k, v, lo, hi);
    return out;
}

ExperimentResult run_matcomp(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.config = cfg;
    const MatcompInstance inst = gen_matcomp_instance(cfg.n, cfg.density, cfg.seed);
    const MatcompData& d = inst.data;

    // The baseline is independent of the CGALP solve.
    auto gfb = std::async(std::launch::async, [&] { return run_gfb_part(cfg, d); });

    const CompositeProblem p = matcomp_cgalp_problem(d);
    const std::string key = "v1|matcomp-cgalp|seed=" + std::to_string(cfg.seed) + "|n=" + std::to_string(cfg.n) +
                            "|density=" + format_double(cfg.density) + "|" + schedule_key(cfg.schedule) +
                            "|ref_iters=" + std::to_string(cfg.ref_iters);
    const json ref = cached_reference(
        cfg, key,
        [&] {
            RunOptions o;
            o.max_iters = cfg.ref_iters;
            o.check_membership = false;  // an SVD per step; the traced run checks
            const RunResult r = run(p, cfg.schedule, initial_state(p), o);
            return json{{"x_star", vec_to_json(r.state.x)}, {"mu_star", vec_to_json(r.state.mu)}};
        },
        res.reference_from_cache);
    res.x_star = json_to_vec(ref.at("x_star"));
    res.mu_star = json_to_vec(ref.at("mu_star"));

    CgalpTrace tr = trace_cgalp(p, cfg.schedule, cfg.iters, res.x_star, res.mu_star, cfg.timing);
    res.cgalp_rows = std::move(tr.rows);
    res.membership_failures = tr.result.membership_failures;
    res.x_final = tr.result.state.x;
    res.x_erg_opt = tr.result.state.x_erg_opt;

    GfbOutcome g = gfb.get();
    res.gfb_rows = std::move(g.rows);
    res.reference_from_cache = res.reference_from_cache && g.from_cache;

    const Eigen::Index nn = d.n() * d.n();
    const Matrix cgalp_mean = unflatten(0.5 * (res.x_erg_opt.head(nn) + res.x_erg_opt.tail(nn)), d.n(), d.n());
    res.summary = {{"config", config_json(cfg)},
                   {"instance", {{"delta1", d.delta1}, {"delta2", d.delta2}, {"observed", d.mask.observed()}}},
                   {"reference", {{"from_cache", res.reference_from_cache}}},
                   {"cgalp",
                    {{"fits", cgalp_fits(res.cgalp_rows)},
                     {"diagnostics", cgalp_diagnostics(p, cfg.schedule, tr.result)},
                     {"consensus_gap", (res.x_erg_opt.head(nn) - res.x_erg_opt.tail(nn)).norm()},
                     {"phi_erg_mean", matcomp_data_fit(d, cgalp_mean)}}},
                   {"gfb", {{"fits", {{"bregman_criterion", g.fit}}}, {"phi_erg_mean", g.phi}}}};
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_cgalp_csv(cfg.out_dir / "cgalp.csv", res.cgalp_rows);
        write_gfb_csv(cfg.out_dir / "gfb.csv", res.gfb_rows);
        write_summary(cfg.out_dir / "summary.json", res.summary);
    }
    return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    return cfg.experiment == Experiment::projection ? run_projection(cfg) : run_matcomp(cfg);
}

std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& cfgs, unsigned threads) {
    std::vector<ExperimentResult> results(cfgs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cfgs.size(); i = next++) {
            try {
                results[i] = run_experiment(cfgs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfgs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

}  // namespace cgalp::bench
