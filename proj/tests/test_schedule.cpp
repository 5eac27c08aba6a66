#include "doctest.h"

#include "cgalp/schedule.hpp"

#include <cmath>

using namespace cgalp;

namespace {

ValidationOptions short_horizon() {
    ValidationOptions o;
    o.numeric_horizon = 100000;
    return o;
}

}  // namespace

TEST_CASE("sequence values") {
    ParameterSchedule s;
    s.a = 0;
    s.b = 0;
    s.delta = 0.5;
    s.rho = 5;
    s.c = 1;
    CHECK(s.gamma(0) == 1.0);
    CHECK(s.gamma(3) == 0.25);
    CHECK(s.beta(3) == doctest::Approx(0.5));
    CHECK(s.theta(3) == 0.25);
    CHECK(s.rho_at(100) == 5.0);

    ParameterSchedule l = s;
    l.a = 1;
    CHECK(l.gamma(0) == doctest::Approx(std::log(2.0)));
    CHECK(l.gamma(1) == doctest::Approx(std::log(3.0) / 2.0));
}

TEST_CASE("a plain schedule passes every check") {
    ParameterSchedule s;
    s.a = 0;
    s.b = 0;
    s.delta = 0.5;
    s.rho = 5;
    s.c = 1;
    const ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
    INFO(r.to_string());
    CHECK(r.all_passed());
    CHECK(r.failures().empty());
    CHECK(r.to_string().find("schedule accepted") != std::string::npos);
}

TEST_CASE("the experiment schedules pass") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.0, 1.0 / 3.0 - 0.01}, std::pair{1.0, 1.0 / 3.0 - 0.01}}) {
        const ParameterSchedule s = ParameterSchedule::projection_default(a, b);
        CHECK(s.delta > 2 * b);
        CHECK(s.delta < 1 - b);
        const ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
        INFO(a, " ", b, "\n", r.to_string());
        CHECK(r.all_passed());
    }
    const ValidationReport r =
        validate_schedule(ParameterSchedule::matrix_completion_default(), std::nullopt, 2.0, short_horizon());
    INFO(r.to_string());
    CHECK(r.all_passed());
}

TEST_CASE("out-of-range b is rejected with a reason") {
    ParameterSchedule s;
    s.b = 0.4;
    s.delta = 0.5;
    const ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
    CHECK_FALSE(r.all_passed());
    REQUIRE(r.find("b-range") != nullptr);
    CHECK_FALSE(r.find("b-range")->passed);
    CHECK(r.find("b-range")->detail == "b outside [0, 1/3)");
}

TEST_CASE("delta at or below 2b is rejected") {
    ParameterSchedule s;
    s.b = 0.2;
    s.delta = 0.4;
    const ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
    CHECK_FALSE(r.find("delta-range")->passed);
    s.delta = 0.41;
    CHECK(validate_schedule(s, 1.0, 2.0, short_horizon()).find("delta-range")->passed);
}

TEST_CASE("a penalty below 2^(2-b)/c violates the dual-step condition") {
    ParameterSchedule s;
    s.b = 0.1;
    s.delta = 0.5;
    s.c = 1.0;
    s.rho = std::pow(2.0, 1.9) * 0.99;
    const ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
    CHECK_FALSE(r.find("P.6")->passed);
    CHECK(r.find("P.6")->detail.find("need rho >") != std::string::npos);
    s.rho = std::pow(2.0, 1.9) * 1.01;
    CHECK(validate_schedule(s, 1.0, 2.0, short_horizon()).find("P.6")->passed);
}

TEST_CASE("variable penalty sequences") {
    ParameterSchedule s;
    s.delta = 0.5;
    s.rho_sequence = [](std::int64_t k) { return 5.0 + 1.0 - 1.0 / static_cast<double>(k + 1); };
    ValidationReport r = validate_schedule(s, 1.0, 2.0, short_horizon());
    INFO(r.to_string());
    CHECK(r.find("P.4")->passed);
    CHECK(r.find("P.7")->passed);

    // A jump that outpaces the step size breaks the coupling condition.
    s.rho_sequence = [](std::int64_t k) { return k < 10 ? 5.0 : 8.0; };
    r = validate_schedule(s, 1.0, 2.0, short_horizon());
    CHECK(r.find("P.4")->passed);
    CHECK_FALSE(r.find("P.7")->passed);
    CHECK(r.find("P.7")->detail == "violated at k=9");

    s.rho_sequence = [](std::int64_t k) { return k < 10 ? 8.0 : 5.0; };
    CHECK_FALSE(validate_schedule(s, 1.0, 2.0, short_horizon()).find("P.4")->passed);
}

TEST_CASE("zeta summability is reported as not evaluated without a Lipschitz constant") {
    const ValidationReport r =
        validate_schedule(ParameterSchedule::matrix_completion_default(), std::nullopt, 2.0, short_horizon());
    CHECK(r.find("P.1")->detail.find("not evaluated") != std::string::npos);
}

TEST_CASE("partial sums of gamma grow like log k when a = b = 0") {
    ParameterSchedule s;
    double total = 0.0;
    for (std::int64_t k = 0; k <= 100000; ++k) {
        total += s.gamma(k);
        if (k >= 100) {
            const double ratio = total / std::log(static_cast<double>(k) + 2.0);
            CHECK(ratio >= 0.9);
            CHECK(ratio <= 1.5);
            if (ratio < 0.9 || ratio > 1.5) break;
        }
    }
}

TEST_CASE("step ratios stay inside the crude bounds") {
    for (double a : {0.0, 0.5, 1.0}) {
        for (double b : {0.0, 0.1, 0.3}) {
            ParameterSchedule s;
            s.a = a;
            s.b = b;
            for (std::int64_t k = 0; k < 10000; ++k) {
                const double r = s.gamma(k) / s.gamma(k + 1);
                CHECK(r <= s.gamma_ratio_upper() * (1 + 1e-12));
                CHECK(r >= s.gamma_ratio_lower() * (1 - 1e-12));
                if (r > s.gamma_ratio_upper() * (1 + 1e-12)) break;
            }
        }
    }
}
