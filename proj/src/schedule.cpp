#include "cgalp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cgalp {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double ParameterSchedule::gamma(std::int64_t k) const {
    const double kk = static_cast<double>(k);
    const double num = a == 0.0 ? 1.0 : std::pow(std::log(kk + 2.0), a);
    return num / std::pow(kk + 1.0, 1.0 - b);
}

double ParameterSchedule::beta(std::int64_t k) const {
    return 1.0 / std::pow(static_cast<double>(k) + 1.0, 1.0 - delta);
}

double ParameterSchedule::theta(std::int64_t k) const { return gamma(k) / c; }

double ParameterSchedule::rho_at(std::int64_t k) const { return rho_sequence ? rho_sequence(k) : rho; }

double ParameterSchedule::gamma_ratio_upper() const { return std::pow(2.0, 1.0 - b); }

double ParameterSchedule::gamma_ratio_lower() const { return std::pow(std::log(2.0) / std::log(3.0), a); }

ParameterSchedule ParameterSchedule::projection_default(double a, double b) {
    ParameterSchedule s;
    s.a = a;
    s.b = b;
    s.delta = 0.5 * (2.0 * b + (1.0 - b));
    s.rho = std::pow(2.0, 2.0 - b) + 1.0;
    s.c = 1.0;
    return s;
}

ParameterSchedule ParameterSchedule::matrix_completion_default() {
    ParameterSchedule s;
    s.a = 0.0;
    s.b = 0.0;
    s.delta = 0.5;
    s.rho = 15.0;
    s.c = 1.0;
    return s;
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) { return c.passed; });
}

const AssumptionCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<std::string> ValidationReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.evaluated) os << " (not evaluated)";
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    os << (all_passed() ? "schedule accepted" : "schedule rejected") << '\n';
    return os.str();
}

ValidationReport validate_schedule(const ParameterSchedule& s, std::optional<double> f_lipschitz,
                                   double diameter, const ValidationOptions& options) {
    ValidationReport report;
    auto add = [&report](std::string name, bool passed, std::string detail, bool evaluated = true) {
        report.checks.push_back({std::move(name), passed, evaluated, std::move(detail)});
    };
    const std::int64_t horizon = std::max<std::int64_t>(options.numeric_horizon, 1);
    const double b = s.b;
    const double delta = s.delta;

    add("a-range", s.a >= 0.0, s.a >= 0.0 ? "" : "a must be nonnegative");
    {
        const bool ok = b >= 0.0 && b < 1.0 / 3.0;
        add("b-range", ok, ok ? "" : "b outside [0, 1/3)");
    }
    {
        const bool ok = 2.0 * b < delta && delta < 1.0 && delta < 1.0 - b;
        add("delta-range", ok, ok ? "" : "need 2b < delta < 1 and delta < 1 - b");
    }

    // (P.1) gamma_k in ]0,1] and summability of zeta(gamma_k), gamma_k^2/beta_k, gamma_k beta_k.
    {
        bool in_unit = true;
        std::int64_t bad_k = -1;
        for (std::int64_t k = 0; k <= horizon && in_unit; ++k) {
            const double g = s.gamma(k);
            if (!(g > 0.0 && g <= 1.0)) {
                in_unit = false;
                bad_k = k;
            }
        }
        const double gamma_exp = 1.0 - b;
        const double beta_exp = 1.0 - delta;
        const bool zeta_needed = f_lipschitz && *f_lipschitz * diameter * diameter > 0.0;
        const bool zeta_ok = !zeta_needed || 2.0 * gamma_exp > 1.0;
        const bool sq_over_beta_ok = 2.0 * gamma_exp - beta_exp > 1.0;
        const bool times_beta_ok = gamma_exp + beta_exp > 1.0;
        std::string detail;
        if (!in_unit) detail += "gamma_" + std::to_string(bad_k) + " outside ]0,1]; ";
        if (!zeta_ok) detail += "zeta(gamma_k) not summable (2(1-b) <= 1); ";
        if (!f_lipschitz) detail += "zeta(gamma_k) summability not evaluated (no Lipschitz constant); ";
        if (!sq_over_beta_ok) detail += "gamma_k^2/beta_k not summable (2(1-b)-(1-delta) <= 1); ";
        if (!times_beta_ok) detail += "gamma_k*beta_k not summable ((1-b)+(1-delta) <= 1); ";
        add("P.1", in_unit && zeta_ok && sq_over_beta_ok && times_beta_ok, detail);
    }

    // (P.2) gamma_k not summable: exponent 1-b <= 1.
    {
        const bool ok = 1.0 - b <= 1.0 && s.a >= 0.0;
        add("P.2", ok, ok ? "" : "gamma_k summable");
    }

    // (P.3) beta_k non-increasing and vanishing.
    {
        const bool ok = delta < 1.0;
        add("P.3", ok, ok ? "" : "beta_k does not vanish (delta >= 1)");
    }

    // (P.4) rho_k non-decreasing, bounded away from 0 and from infinity.
    double rho_inf = s.rho;
    {
        bool ok = true;
        std::string detail;
        if (s.rho_sequence) {
            double prev = s.rho_at(0);
            rho_inf = prev;
            for (std::int64_t k = 1; k <= horizon && ok; ++k) {
                const double r = s.rho_at(k);
                if (!std::isfinite(r) || r < prev) {
                    ok = false;
                    detail = "rho_k decreases or diverges at k=" + std::to_string(k);
                }
                prev = r;
            }
            if (ok && !(rho_inf > 0.0)) {
                ok = false;
                detail = "inf rho_k must be positive";
            }
        } else if (!(s.rho > 0.0) || !std::isfinite(s.rho)) {
            ok = false;
            detail = "rho must be positive and finite";
        }
        add("P.4", ok, detail);
    }

    // (P.5) bounded step ratios.
    const double ratio_hi = s.gamma_ratio_upper();
    {
        const double ratio_lo = s.gamma_ratio_lower();
        double seen_lo = INFINITY;
        double seen_hi = 0.0;
        for (std::int64_t k = 0; k < horizon; ++k) {
            const double r = s.gamma(k) / s.gamma(k + 1);
            seen_lo = std::min(seen_lo, r);
            seen_hi = std::max(seen_hi, r);
        }
        const bool ok = seen_lo >= ratio_lo * (1.0 - 1e-12) && seen_hi <= ratio_hi * (1.0 + 1e-12);
        add("P.5", ok,
            "observed ratios in [" + fmt(seen_lo) + ", " + fmt(seen_hi) + "], bounds [" + fmt(ratio_lo) + ", " +
                fmt(ratio_hi) + "]");
    }

    // (P.6) theta_k = gamma_k / c with gamma_bar/c - rho_inf/2 < 0.
    {
        const bool ok = s.c > 0.0 && ratio_hi / s.c - rho_inf / 2.0 < 0.0;
        add("P.6", ok,
            ok ? "" : "need rho > 2^(2-b)/c = " + fmt(2.0 * ratio_hi / (s.c > 0.0 ? s.c : 1.0)));
    }

    // (P.7) coupling between steps and penalties, evaluated directly.
    {
        bool ok = s.c > 0.0;
        std::string detail = ok ? "" : "c must be positive";
        for (std::int64_t k = 0; k < horizon && ok; ++k) {
            const double g0 = s.gamma(k);
            const double g1 = s.gamma(k + 1);
            const double r0 = s.rho_at(k);
            const double r1 = s.rho_at(k + 1);
            const double lhs = r1 - r0 - g1 * r1 + (2.0 / s.c) * g0 - g0 * g0 / s.c;
            if (lhs > g1 * (1.0 + 1e-12)) {
                ok = false;
                detail = "violated at k=" + std::to_string(k);
            }
        }
        if (ok) detail = "holds for k <= " + std::to_string(horizon);
        add("P.7", ok, detail);
    }

    return report;
}

}  // namespace cgalp
