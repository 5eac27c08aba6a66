#pragma once

#include "cgalp/linalg.hpp"

#include <functional>
#include <optional>

namespace cgalp {

/// A proper lsc convex function whose proximal map is cheap.
///
/// `value` may return +infinity outside the domain. `prox(beta, x)` is the
/// minimizer of value(y) + |x - y|^2 / (2 beta). `min_norm_subgrad`, when
/// present, returns the minimal-norm element of the subdifferential.
struct ProxFriendly {
    std::function<double(const Vector&)> value;
    std::function<Vector(double, const Vector&)> prox;
    std::optional<std::function<Vector(const Vector&)>> min_norm_subgrad;
};

// Soft thresholding at level beta.
Vector prox_l1(double beta, const Vector& x);

/// Moreau envelope g^beta(x) = g(p) + |x - p|^2 / (2 beta), p = prox_{beta g}(x).
double moreau_value(const ProxFriendly& g, double beta, const Vector& x);

/// Gradient of the Moreau envelope, (x - prox_{beta g}(x)) / beta.
Vector moreau_grad(const ProxFriendly& g, double beta, const Vector& x);

/// Euclidean projection onto {|x|_1 <= delta} (sort-and-threshold).
Vector project_l1_ball(double delta, const Vector& x);

/// Euclidean projection onto the nuclear-norm ball {|X|_* <= delta}: full SVD,
/// then the singular values are projected onto the l1 ball.
Matrix project_nuclear_ball(double delta, const Matrix& x);

double nuclear_norm(const Matrix& x);

// Stock functions.
ProxFriendly zero_function();
ProxFriendly l1_norm();
/// scale * |x - center|_1
ProxFriendly shifted_l1(Vector center, double scale);
/// Indicator of the box [lo, hi] (componentwise).
ProxFriendly box_indicator(Vector lo, Vector hi);
ProxFriendly l1_ball_indicator(double delta);
ProxFriendly nuclear_ball_indicator(double delta, Eigen::Index rows, Eigen::Index cols);

}  // namespace cgalp
