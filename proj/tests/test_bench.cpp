#include "doctest.h"

#include "cgalp/bench/experiment.hpp"
#include "cgalp/bench/instances.hpp"
#include "cgalp/bench/rate_fit.hpp"
#include "cgalp/bench/reference_cache.hpp"
#include "cgalp/bench/trace_io.hpp"
#include "cgalp/solver.hpp"
#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cgalp;
using namespace cgalp::bench;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("cgalp_test_bench_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("projection instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ProjectionInstance inst = gen_projection_instance(seed);
        const oracle::Svd svd = oracle::jacobi_svd(inst.A);
        CHECK(svd.S[1] < 1e-12);
        CHECK(svd.S[0] == doctest::Approx(1.0));
        const bool in_ball = inst.y.lpNorm<1>() <= 1.0;
        const bool in_kernel = (inst.A * inst.y).norm() <= 1e-12;
        CHECK_FALSE((in_ball && in_kernel));
        CHECK_NOTHROW(inst.problem.validate());
    }
    const ProjectionInstance a = gen_projection_instance(9), b = gen_projection_instance(9);
    CHECK(a.y == b.y);
    CHECK(a.A == b.A);
}

TEST_CASE("a long CGALP run on the projection problem matches the kernel-line oracle") {
    const ProjectionInstance inst = gen_projection_instance(1);
    RunOptions opts;
    opts.max_iters = 100000;
    const RunResult r =
        run(inst.problem, ParameterSchedule::projection_default(0.0, 1.0 / 3.0 - 0.01), initial_state(inst.problem),
            opts);
    const Vector ref = oracle::kernel_line_projection(inst.y, inst.v);
    CHECK((r.state.x - ref).norm() < 1e-3);
    CHECK(r.membership_failures == 0);
}

TEST_CASE("kernel-line oracle on a hand instance") {
    const Vector ref = oracle::kernel_line_projection(make_vector({1.5, -0.7}), make_vector({0.8, -0.6}));
    CHECK((ref - make_vector({0.204, 0.272})).norm() < 1e-7);
}

TEST_CASE("matrix-completion instances") {
    for (Eigen::Index n : {5, 7, 12, 32}) {
        const MatcompInstance inst = gen_matcomp_instance(n, 0.8, 3);
        CHECK(inst.y_tilde.size() == n);
        CHECK((inst.y_tilde.array() != 0.0).count() == n / 5);
        CHECK(inst.y_tilde.cwiseAbs().maxCoeff() <= 1.0);
        CHECK(inst.data.mask.observed() == static_cast<Eigen::Index>(std::floor(0.8 * n * n)));
        const oracle::Svd svd = oracle::jacobi_svd(inst.X0);
        CHECK(svd.S[1] < 1e-12);
        CHECK(svd.S.sum() == doctest::Approx(inst.y_tilde.squaredNorm()).epsilon(1e-12));
        CHECK(inst.data.delta1 == inst.y_tilde.squaredNorm() / 2.0);
        CHECK(inst.data.delta2 == inst.X0.cwiseAbs().sum() / 2.0);
        CHECK((inst.data.y - inst.data.mask.apply(flatten(inst.X0))).norm() == 0.0);
    }
    CHECK(gen_matcomp_instance(10, 1.0, 1).data.mask.observed() == 100);
}

TEST_CASE("rate fits") {
    std::vector<std::int64_t> k;
    std::vector<double> inv, inv_sqrt, inv_log;
    for (std::int64_t i = 1000; i <= 100000; i += 100) {
        k.push_back(i);
        inv.push_back(7.0 / static_cast<double>(i));
        inv_sqrt.push_back(3.0 / std::sqrt(static_cast<double>(i)));
        inv_log.push_back(1.0 / std::log(static_cast<double>(i) + 2.0));
    }
    const RateFit a = fit_rate(k, inv, 1000, 100000);
    CHECK(a.slope == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(a.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));
    CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit_rate(k, inv_sqrt, 1000, 100000).slope == doctest::Approx(-0.5).epsilon(1e-6));
    const double s_log = fit_rate(k, inv_log, 1000, 100000).slope;
    CHECK(s_log < 0.0);
    CHECK(s_log > -0.2);

    std::vector<double> holes = inv;
    holes[3] = 0.0;
    holes[10] = -1.0;
    holes[20] = std::nan("");
    const RateFit h = fit_rate(k, holes, 1000, 100000);
    CHECK(h.points_excluded == 3);
    CHECK(h.points_used == static_cast<std::int64_t>(k.size()) - 3);
    CHECK(h.slope == doctest::Approx(-1.0).epsilon(1e-6));

    CHECK_THROWS_AS(fit_rate(k, inv, 1000, 1800), RateFitError);
    CHECK_THROWS_AS(fit_rate(k, inv, 0, 100000), RateFitError);
    CHECK_THROWS(fit_rate({1, 2}, {1.0}, 1, 2));
}

TEST_CASE("CSV traces round-trip") {
    const fs::path dir = fresh_dir("csv");
    std::vector<CgalpRow> rows;
    for (int i = 0; i < 5; ++i) {
        CgalpRow r;
        r.k = i;
        r.gamma_k = 1.0 / (i + 1);
        r.erg_lagrangian_gap = std::exp(-i) / 3.0;
        r.mu_norm = 0.1 * i;
        rows.push_back(r);
    }
    write_cgalp_csv(dir / "t.csv", rows);
    const std::string text = slurp(dir / "t.csv");
    CHECK(text.rfind(std::string(kCgalpHeader) + "\n", 0) == 0);
    const CsvColumn col = read_csv_column(dir / "t.csv", "erg_lagrangian_gap");
    REQUIRE(col.value.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(col.k[i] == i);
        CHECK(col.value[i] == rows[i].erg_lagrangian_gap);
    }
    CHECK_THROWS(read_csv_column(dir / "t.csv", "nope"));

    std::vector<GfbRow> g = {{0, std::numeric_limits<double>::infinity(), 0.5, 0.25}, {1, 0.125, 0.5, 0.25}};
    write_gfb_csv(dir / "g.csv", g);
    const CsvColumn gc = read_csv_column(dir / "g.csv", "bregman_criterion");
    CHECK(std::isinf(gc.value[0]));
    CHECK(gc.value[1] == 0.125);
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("reference cache") {
    const fs::path dir = fresh_dir("cache");
    const ReferenceCache cache(dir);
    CHECK_FALSE(cache.load("a").has_value());
    cache.store("a", nlohmann::json{{"x", {1.0, 2.0}}});
    const auto hit = cache.load("a");
    REQUIRE(hit.has_value());
    CHECK((*hit)["x"][1] == 2.0);

    // A file under the wrong name is not served for another key.
    fs::copy_file(cache.path_for("a"), cache.path_for("b"));
    CHECK_FALSE(cache.load("b").has_value());
}

TEST_CASE("experiment configuration checks") {
    ExperimentConfig cfg;
    cfg.density = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.density = 0.8;
    cfg.iters = 10;
    cfg.ref_iters = 5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(parse_experiment("matcomp") == Experiment::matcomp);
    CHECK(to_string(Experiment::projection) == "projection");
    CHECK_THROWS(parse_experiment("other"));
}

TEST_CASE("a cache miss with references disabled is an explicit error") {
    ExperimentConfig cfg;
    cfg.schedule = ParameterSchedule::projection_default(0, 0);
    cfg.iters = 100;
    cfg.ref_iters = 1000;
    cfg.cache_dir = fresh_dir("miss");
    cfg.compute_reference = false;
    CHECK_THROWS_AS(run_experiment(cfg), ReferenceMissing);

    cfg.compute_reference = true;
    const ExperimentResult first = run_experiment(cfg);
    CHECK_FALSE(first.reference_from_cache);
    cfg.compute_reference = false;
    const ExperimentResult second = run_experiment(cfg);
    CHECK(second.reference_from_cache);
    CHECK(second.x_star == first.x_star);
}

TEST_CASE("identical configurations write byte-identical traces") {
    for (Experiment e : {Experiment::projection, Experiment::matcomp}) {
        ExperimentConfig cfg;
        cfg.experiment = e;
        cfg.n = 8;
        cfg.schedule = e == Experiment::projection ? ParameterSchedule::projection_default(1.0, 0.2)
                                                   : ParameterSchedule::matrix_completion_default();
        cfg.iters = 500;
        cfg.ref_iters = 2000;
        cfg.seed = 4;
        cfg.out_dir = fresh_dir("det_a_" + to_string(e));
        const ExperimentResult a = run_experiment(cfg);
        cfg.out_dir = fresh_dir("det_b_" + to_string(e));
        cfg.cache_dir = fresh_dir("det_cache_" + to_string(e));
        const ExperimentResult b = run_experiment(cfg);
        CHECK_FALSE(b.reference_from_cache);
        CHECK(a.cgalp_rows.size() == 500);
        CHECK(slurp(a.config.out_dir / "cgalp.csv") == slurp(b.config.out_dir / "cgalp.csv"));
        CHECK(slurp(a.config.out_dir / "summary.json") == slurp(b.config.out_dir / "summary.json"));
        if (e == Experiment::matcomp) {
            CHECK(a.gfb_rows.size() == 500);
            CHECK(slurp(a.config.out_dir / "gfb.csv") == slurp(b.config.out_dir / "gfb.csv"));
        }
    }
}

TEST_CASE("trace rows follow the documented labelling") {
    ExperimentConfig cfg;
    cfg.schedule = ParameterSchedule::projection_default(0, 0);
    cfg.iters = 50;
    cfg.ref_iters = 1000;
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.cgalp_rows.size() == 50);
    CHECK(r.cgalp_rows.front().k == 0);
    CHECK(r.cgalp_rows.front().gamma_k == 1.0);
    CHECK(r.cgalp_rows.back().k == 49);
    const ProjectionInstance inst = gen_projection_instance(cfg.seed);
    CHECK(r.cgalp_rows.back().feas_gap == doctest::Approx(feasibility_gap(inst.problem, r.x_final)).epsilon(1e-14));
    for (const auto& row : r.cgalp_rows) CHECK(row.wall_time_s == 0.0);
}

TEST_CASE("doubling the reference budget changes the final gap by less than 10%") {
    ExperimentConfig cfg;
    cfg.schedule = ParameterSchedule::projection_default(0.0, 1.0 / 3.0 - 0.01);
    cfg.iters = 10000;
    cfg.ref_iters = 100000;
    const ExperimentResult a = run_experiment(cfg);
    cfg.ref_iters = 200000;
    const ExperimentResult b = run_experiment(cfg);
    const double ga = a.cgalp_rows.back().erg_lagrangian_gap;
    const double gb = b.cgalp_rows.back().erg_lagrangian_gap;
    INFO(ga, " vs ", gb);
    CHECK(std::abs(ga - gb) < 0.1 * std::abs(gb));
}
