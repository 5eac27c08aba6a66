#pragma once

#include "cgalp/bench/trace_io.hpp"
#include "cgalp/schedule.hpp"
#include "cgalp/linalg.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgalp::bench {

enum class Experiment { projection, matcomp };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::projection;
    Eigen::Index n = 32;
    double density = 0.8;
    ParameterSchedule schedule;
    std::int64_t iters = 10'000;
    std::int64_t ref_iters = 100'000;
    std::uint64_t seed = 1;
    /// Empty: nothing is written.
    std::filesystem::path out_dir;
    /// Defaults to ReferenceCache::default_dir(out_dir); with an empty
    /// out_dir and no cache_dir references are recomputed every time.
    std::optional<std::filesystem::path> cache_dir;
    /// When false a cache miss is an error instead of a reference solve.
    bool compute_reference = true;
    /// Fill wall_time_s; off by default so traces are byte-reproducible.
    bool timing = false;

    /// Throws std::invalid_argument on density outside (0, 1], iters < 1,
    /// or iters > ref_iters.
    void validate() const;
};

class ReferenceMissing : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schedule used for the projection reference solve: a = 0, b = 1/3 - 0.01,
/// which reaches a far more accurate saddle point than the slower members of
/// the family. The saddle point does not depend on the schedule.
ParameterSchedule projection_reference_schedule();

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CgalpRow> cgalp_rows;
    std::vector<GfbRow> gfb_rows;
    bool reference_from_cache = false;
    std::int64_t membership_failures = 0;
    Vector x_final;
    Vector x_erg_opt;
    Vector x_star;
    Vector mu_star;
    nlohmann::json summary;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Runs independent configurations on up to `threads` workers. Results keep
/// the input order; the first exception is rethrown after all workers stop.
std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& cfgs, unsigned threads);

}  // namespace cgalp::bench
