#include "cgalp/prox.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cgalp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double beta, const char* where) {
    if (!(beta > 0.0)) throw std::invalid_argument(std::string(where) + ": parameter must be positive");
}

}  // namespace

Vector prox_l1(double beta, const Vector& x) {
    require_positive(beta, "prox_l1");
    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]) - beta;
        out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
    }
    return out;
}

double moreau_value(const ProxFriendly& g, double beta, const Vector& x) {
    require_positive(beta, "moreau_value");
    const Vector p = g.prox(beta, x);
    const double gp = g.value(p);
    if (!std::isfinite(gp)) throw std::logic_error("moreau_value: prox landed outside dom g");
    return gp + (x - p).squaredNorm() / (2.0 * beta);
}

Vector moreau_grad(const ProxFriendly& g, double beta, const Vector& x) {
    require_positive(beta, "moreau_grad");
    return (x - g.prox(beta, x)) / beta;
}

Vector project_l1_ball(double delta, const Vector& x) {
    require_positive(delta, "project_l1_ball");
    if (x.lpNorm<1>() <= delta) return x;

    // Project |x| onto the simplex of radius delta, then restore signs.
    std::vector<double> mags(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(x[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());

    double cumulative = 0.0;
    double threshold = 0.0;
    for (std::size_t j = 0; j < mags.size(); ++j) {
        cumulative += mags[j];
        const double candidate = (cumulative - delta) / static_cast<double>(j + 1);
        if (mags[j] > candidate) threshold = candidate;
        else break;
    }

    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]) - threshold;
        out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
    }
    return out;
}

double nuclear_norm(const Matrix& x) {
    Eigen::BDCSVD<Matrix> svd(x);
    return svd.singularValues().sum();
}

Matrix project_nuclear_ball(double delta, const Matrix& x) {
    require_positive(delta, "project_nuclear_ball");
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw std::runtime_error("project_nuclear_ball: SVD failed");
    const Vector& sigma = svd.singularValues();
    if (sigma.sum() <= delta) return x;
    const Vector shrunk = project_l1_ball(delta, sigma);
    return svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
}

ProxFriendly zero_function() {
    return ProxFriendly{
        [](const Vector&) { return 0.0; },
        [](double, const Vector& x) -> Vector { return x; },
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); },
    };
}

ProxFriendly l1_norm() { return shifted_l1(Vector(), 1.0); }

ProxFriendly shifted_l1(Vector center, double scale) {
    require_positive(scale, "shifted_l1");
    auto shift = [center](const Vector& x) -> Vector {
        if (center.size() == 0) return x;
        if (center.size() != x.size()) throw DimensionError("shifted_l1: dimension mismatch");
        return x - center;
    };
    return ProxFriendly{
        [shift, scale](const Vector& x) { return scale * shift(x).lpNorm<1>(); },
        [shift, scale](double beta, const Vector& x) -> Vector {
            return x - shift(x) + prox_l1(beta * scale, shift(x));
        },
        [shift, scale](const Vector& x) -> Vector {
            const Vector d = shift(x);
            Vector out(d.size());
            for (Eigen::Index i = 0; i < d.size(); ++i)
                out[i] = d[i] > 0.0 ? scale : (d[i] < 0.0 ? -scale : 0.0);
            return out;
        },
    };
}

ProxFriendly box_indicator(Vector lo, Vector hi) {
    if (lo.size() != hi.size()) throw DimensionError("box_indicator: bound dimension mismatch");
    if ((lo.array() > hi.array()).any()) throw std::invalid_argument("box_indicator: lo > hi");
    return ProxFriendly{
        [lo, hi](const Vector& x) {
            if (x.size() != lo.size()) throw DimensionError("box_indicator: dimension mismatch");
            return ((x.array() >= lo.array()) && (x.array() <= hi.array())).all() ? 0.0 : kInf;
        },
        [lo, hi](double, const Vector& x) -> Vector { return x.cwiseMax(lo).cwiseMin(hi); },
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); },
    };
}

ProxFriendly l1_ball_indicator(double delta) {
    require_positive(delta, "l1_ball_indicator");
    return ProxFriendly{
        [delta](const Vector& x) { return x.lpNorm<1>() <= delta * (1.0 + 1e-12) ? 0.0 : kInf; },
        [delta](double, const Vector& x) { return project_l1_ball(delta, x); },
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); },
    };
}

ProxFriendly nuclear_ball_indicator(double delta, Eigen::Index rows, Eigen::Index cols) {
    require_positive(delta, "nuclear_ball_indicator");
    return ProxFriendly{
        [delta, rows, cols](const Vector& x) {
            return nuclear_norm(unflatten(x, rows, cols)) <= delta * (1.0 + 1e-10) ? 0.0 : kInf;
        },
        [delta, rows, cols](double, const Vector& x) {
            return flatten(project_nuclear_ball(delta, unflatten(x, rows, cols)));
        },
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); },
    };
}

}  // namespace cgalp
