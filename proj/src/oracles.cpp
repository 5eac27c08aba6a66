#include "cgalp/oracles.hpp"

#include "cgalp/prox.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgalp {

double LmoFriendly::value(const Vector& x, double tol) const {
    if (!membership(x, tol)) return std::numeric_limits<double>::infinity();
    return value_on_domain ? value_on_domain(x) : 0.0;
}

Vector lmo_l1_ball(double delta, const Vector& z) {
    if (!(delta > 0.0)) throw std::invalid_argument("lmo_l1_ball: delta must be positive");
    if (z.size() == 0) throw DimensionError("lmo_l1_ball: empty vector");
    Eigen::Index best = 0;
    double best_abs = std::abs(z[0]);
    for (Eigen::Index i = 1; i < z.size(); ++i) {
        if (std::abs(z[i]) > best_abs) {
            best = i;
            best_abs = std::abs(z[i]);
        }
    }
    Vector s = Vector::Zero(z.size());
    s[best] = z[best] > 0.0 ? -delta : delta;
    return s;
}

Matrix lmo_nuclear_ball(double delta, const Matrix& z, const NuclearLmoOptions& options) {
    if (!(delta > 0.0)) throw std::invalid_argument("lmo_nuclear_ball: delta must be positive");
    if (!(options.rel_tol > 0.0)) throw std::invalid_argument("lmo_nuclear_ball: tol must be positive");
    if (z.norm() == 0.0) return Matrix::Zero(z.rows(), z.cols());

    PowerSvdOptions power;
    power.tol = options.rel_tol;
    power.max_iters = options.max_power_iters;
    power.seed = options.seed;
    power.gram_squarings = options.gram_squarings;
    SingularTriple top;
    try {
        top = power_svd_top(z, power);
    } catch (const PowerIterationError&) {
        Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success) throw std::runtime_error("lmo_nuclear_ball: SVD failed");
        top.u = svd.matrixU().col(0);
        top.v = svd.matrixV().col(0);
    }
    return -delta * top.u * top.v.transpose();
}

Vector lmo_box(const Vector& lo, const Vector& hi, const Vector& z) {
    if (lo.size() != hi.size() || lo.size() != z.size()) throw DimensionError("lmo_box: dimension mismatch");
    Vector s(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) s[i] = z[i] >= 0.0 ? lo[i] : hi[i];
    return s;
}

LmoFriendly l1_ball_oracle(Eigen::Index dim, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("l1_ball_oracle: delta must be positive");
    LmoFriendly h;
    h.lmo = [delta](const Vector& z) { return lmo_l1_ball(delta, z); };
    h.membership = [delta](const Vector& x, double tol) { return x.lpNorm<1>() <= delta + tol * (1.0 + delta); };
    h.diameter_bound = 2.0 * delta;
    h.a_feasible_point = Vector::Zero(dim);
    return h;
}

LmoFriendly nuclear_ball_oracle(Eigen::Index rows, Eigen::Index cols, double delta, NuclearLmoOptions options) {
    if (!(delta > 0.0)) throw std::invalid_argument("nuclear_ball_oracle: delta must be positive");
    LmoFriendly h;
    h.lmo = [rows, cols, delta, options](const Vector& z) {
        return flatten(lmo_nuclear_ball(delta, unflatten(z, rows, cols), options));
    };
    h.membership = [rows, cols, delta](const Vector& x, double tol) {
        return nuclear_norm(unflatten(x, rows, cols)) <= delta + tol * (1.0 + delta);
    };
    h.diameter_bound = 2.0 * delta;
    h.a_feasible_point = Vector::Zero(rows * cols);
    return h;
}

LmoFriendly box_oracle(Vector lo, Vector hi) {
    if (lo.size() != hi.size()) throw DimensionError("box_oracle: bound dimension mismatch");
    if ((lo.array() > hi.array()).any()) throw std::invalid_argument("box_oracle: lo > hi");
    LmoFriendly h;
    h.lmo = [lo, hi](const Vector& z) { return lmo_box(lo, hi, z); };
    h.membership = [lo, hi](const Vector& x, double tol) {
        if (x.size() != lo.size()) return false;
        return ((x.array() >= lo.array() - tol) && (x.array() <= hi.array() + tol)).all();
    };
    h.diameter_bound = (hi - lo).norm();
    h.a_feasible_point = 0.5 * (lo + hi);
    return h;
}

}  // namespace cgalp
