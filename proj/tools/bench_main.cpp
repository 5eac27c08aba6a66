// bench: instance generation, CGALP/GFB runs with cached references, rate fits.

#include "cgalp/bench/experiment.hpp"
#include "cgalp/bench/rate_fit.hpp"
#include "cgalp/bench/reference_cache.hpp"
#include "cgalp/bench/trace_io.hpp"
#include "cgalp/schedule.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <thread>

using namespace cgalp;
using namespace cgalp::bench;

namespace {

struct ScheduleFlags {
    std::optional<double> a, b, delta, rho, c;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--a", a, "log exponent of the step size");
        cmd->add_option("--b", b, "step size decays like 1/(k+1)^(1-b)");
        cmd->add_option("--delta", delta, "smoothing decays like 1/(k+1)^(1-delta)");
        cmd->add_option("--rho", rho, "constant penalty parameter");
        cmd->add_option("--c", c, "dual step is gamma_k / c");
    }

    ParameterSchedule resolve(Experiment e) const {
        ParameterSchedule s = e == Experiment::projection ? ParameterSchedule::projection_default(a.value_or(0.0), b.value_or(0.0))
                                                          : ParameterSchedule::matrix_completion_default();
        if (e == Experiment::matcomp) {
            if (a) s.a = *a;
            if (b) s.b = *b;
        }
        if (delta) s.delta = *delta;
        if (rho) s.rho = *rho;
        if (c) s.c = *c;
        return s;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CGALP benchmark harness"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run an experiment and write CSV traces plus summary.json");
    std::string experiment = "projection";
    ExperimentConfig cfg;
    std::vector<std::uint64_t> seeds{1};
    std::string out = "bench_out";
    bool no_ref = false;
    bool allow_invalid = false;
    bool timing = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    ScheduleFlags run_flags;
    run_cmd->add_option("--experiment", experiment, "projection or matcomp")
        ->check(CLI::IsMember({"projection", "matcomp"}));
    run_cmd->add_option("--n", cfg.n, "matrix size for matcomp");
    run_cmd->add_option("--density", cfg.density, "fraction of observed entries for matcomp");
    run_flags.add_to(run_cmd);
    run_cmd->add_option("--iters", cfg.iters, "traced iterations");
    run_cmd->add_option("--ref-iters", cfg.ref_iters, "iterations of the reference solve");
    run_cmd->add_option("--seed", seeds, "instance seed; several seeds run in parallel into out/seed_<S>");
    run_cmd->add_option("--out", out, "output directory");
    run_cmd->add_option("--threads", threads, "worker threads for several seeds");
    run_cmd->add_flag("--no-ref", no_ref, "never compute references; a cache miss is an error");
    run_cmd->add_flag("--timing", timing, "fill wall_time_s (breaks byte-reproducibility)");
    run_cmd->add_flag("--allow-invalid", allow_invalid, "run even if the schedule fails validation");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a log-log rate to one trace column");
    std::string fit_in, fit_column;
    std::int64_t k_lo = 0, k_hi = 0;
    fit_cmd->add_option("--in", fit_in, "trace CSV")->required();
    fit_cmd->add_option("--column", fit_column, "column name")->required();
    fit_cmd->add_option("--k-lo", k_lo, "first k")->required();
    fit_cmd->add_option("--k-hi", k_hi, "last k")->required();

    // validate-schedule
    auto* val_cmd = app.add_subcommand("validate-schedule", "check the step-size assumptions");
    ScheduleFlags val_flags;
    std::string val_experiment = "projection";
    std::optional<double> lipschitz;
    double diameter = 2.0;
    std::int64_t horizon = 1'000'000;
    val_flags.add_to(val_cmd);
    val_cmd->add_option("--experiment", val_experiment, "defaults to fill in for omitted flags")
        ->check(CLI::IsMember({"projection", "matcomp"}));
    val_cmd->add_option("--lipschitz", lipschitz, "Lipschitz constant of grad f (omit if unknown)");
    val_cmd->add_option("--diameter", diameter, "diameter of C");
    val_cmd->add_option("--horizon", horizon, "last k for the numerically checked conditions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            cfg.experiment = parse_experiment(experiment);
            cfg.schedule = run_flags.resolve(cfg.experiment);
            cfg.compute_reference = !no_ref;
            cfg.timing = timing;
            const ValidationReport report = validate_schedule(cfg.schedule, std::nullopt, 0.0);
            if (!report.all_passed()) {
                std::cerr << report.to_string();
                if (!allow_invalid) return 2;
            }
            std::vector<ExperimentConfig> cfgs;
            for (auto s : seeds) {
                ExperimentConfig c = cfg;
                c.seed = s;
                c.out_dir = seeds.size() == 1 ? std::filesystem::path(out)
                                              : std::filesystem::path(out) / ("seed_" + std::to_string(s));
                if (seeds.size() > 1) c.cache_dir = ReferenceCache::default_dir(out);
                cfgs.push_back(std::move(c));
            }
            for (const auto& r : run_experiments(cfgs, threads))
                std::cout << r.config.out_dir.string() << ": " << r.summary["cgalp"]["fits"].dump() << '\n';
            return 0;
        }
        if (*fit_cmd) {
            const CsvColumn col = read_csv_column(fit_in, fit_column);
            const RateFit f = fit_rate(col.k, col.value, k_lo, k_hi);
            std::cout << nlohmann::json{{"slope", f.slope},
                                        {"intercept", f.intercept},
                                        {"r_squared", f.r_squared},
                                        {"k_lo", f.k_lo},
                                        {"k_hi", f.k_hi},
                                        {"points_used", f.points_used},
                                        {"points_excluded", f.points_excluded}}
                             .dump(2)
                      << '\n';
            return 0;
        }
        if (*val_cmd) {
            const ParameterSchedule s = val_flags.resolve(parse_experiment(val_experiment));
            ValidationOptions opts;
            opts.numeric_horizon = horizon;
            const ValidationReport report = validate_schedule(s, lipschitz, diameter, opts);
            std::cout << report.to_string();
            return report.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
