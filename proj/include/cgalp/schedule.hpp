#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cgalp {

/// Open-loop parameter sequences
///
///   gamma_k = log(k+2)^a / (k+1)^(1-b)     (step size)
///   beta_k  = 1 / (k+1)^(1-delta)          (smoothing)
///   theta_k = gamma_k / c                  (dual step)
///   rho_k   = rho, or rho_sequence(k)      (penalty)
///
/// The variable-penalty path exists for validating the penalty-coupling
/// condition; solvers use the constant default.
struct ParameterSchedule {
    double a = 0.0;
    double b = 0.0;
    double delta = 0.5;
    double rho = 5.0;
    double c = 1.0;
    std::function<double(std::int64_t)> rho_sequence;

    double gamma(std::int64_t k) const;
    double beta(std::int64_t k) const;
    double theta(std::int64_t k) const;
    double rho_at(std::int64_t k) const;

    /// Crude upper bound on sup_k gamma_k / gamma_{k+1}: 2^(1-b).
    double gamma_ratio_upper() const;
    /// Crude lower bound on inf_k gamma_k / gamma_{k+1}: (log 2 / log 3)^a.
    double gamma_ratio_lower() const;

    /// The step-size family used in the projection experiment: delta in the
    /// middle of its admissible interval (2b, 1-b), rho = 2^(2-b) + 1, c = 1.
    static ParameterSchedule projection_default(double a, double b);
    /// gamma_k = 1/(k+1), beta_k = 1/sqrt(k+1), theta_k = gamma_k, rho = 15.
    static ParameterSchedule matrix_completion_default();
};

struct AssumptionCheck {
    std::string name;
    bool passed = false;
    bool evaluated = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;

    bool all_passed() const;
    const AssumptionCheck* find(const std::string& name) const;
    std::vector<std::string> failures() const;
    std::string to_string() const;
};

struct ValidationOptions {
    std::int64_t numeric_horizon = 1'000'000;
};

/// Checks the parameter assumptions. Summability conditions are decided from
/// the exponents (with zeta(g) = L d_C^2 g^2 / 2 for an L-smooth f); ratio and
/// penalty-coupling conditions are evaluated directly for k up to the horizon.
ValidationReport validate_schedule(const ParameterSchedule& s, std::optional<double> f_lipschitz,
                                   double diameter, const ValidationOptions& options = {});

}  // namespace cgalp
