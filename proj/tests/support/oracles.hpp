#pragma once

// Reference computations for the tests. None of these call into the library's
// algorithms: they are slow, direct, and written for readability.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Svd {
    Mat U;
    Vec S;  // descending
    Mat V;
};

// One-sided Jacobi (Hestenes): orthogonalize the columns of A V by plane
// rotations until every pair is orthogonal to machine precision.
inline Svd jacobi_svd(const Mat& a) {
    const bool wide = a.cols() > a.rows();
    Mat w = wide ? Mat(a.transpose()) : a;
    const Eigen::Index n = w.cols();
    Mat v = Mat::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = w.col(p).squaredNorm();
                const double beta = w.col(q).squaredNorm();
                const double gamma = w.col(p).dot(w.col(q));
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (Eigen::Index r = 0; r < w.rows(); ++r) {
                    const double wp = w(r, p), wq = w(r, q);
                    w(r, p) = c * wp - s * wq;
                    w(r, q) = s * wp + c * wq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - s * vq;
                    v(r, q) = s * vp + c * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return w.col(i).norm() > w.col(j).norm(); });
    Svd out;
    out.S.resize(n);
    out.U.resize(w.rows(), n);
    out.V.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sigma = w.col(order[i]).norm();
        out.S[i] = sigma;
        out.U.col(i) = sigma > 0 ? Vec(w.col(order[i]) / sigma) : Vec::Zero(w.rows());
        out.V.col(i) = v.col(order[i]);
    }
    if (wide) std::swap(out.U, out.V);
    return out;
}

inline double nuclear_norm(const Mat& a) { return jacobi_svd(a).S.sum(); }

// Minimizer of a unimodal f on [lo, hi].
inline double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// argmin 1/2 |x - y|^2 over {|x|_1 <= 1} ∩ ker(u v^T) in R^2. The kernel is
// the line spanned by w = (-v1, v0); search t on the segment inside the ball.
inline Vec kernel_line_projection(const Vec& y, const Vec& v) {
    Vec w(2);
    w << -v[1], v[0];
    const double t_max = 1.0 / w.lpNorm<1>();
    const double t = golden_section([&](double s) { return 0.5 * (s * w - y).squaredNorm(); }, -t_max, t_max);
    return t * w;
}

// Projection onto the l1 ball by bisection on the soft threshold.
inline Vec l1_ball_projection(const Vec& x, double radius) {
    if (x.lpNorm<1>() <= radius) return x;
    auto shrink = [&](double th) {
        Vec out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out[i] = std::copysign(std::max(std::abs(x[i]) - th, 0.0), x[i]);
        return out;
    };
    double lo = 0.0, hi = x.cwiseAbs().maxCoeff();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shrink(mid).lpNorm<1>() > radius ? lo : hi) = mid;
    }
    return shrink(hi);
}

// All 2n signed unit vertices of the l1 ball of radius delta.
inline std::vector<Vec> l1_vertices(Eigen::Index n, double delta) {
    std::vector<Vec> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vec e = Vec::Zero(n);
            e[i] = sign * delta;
            out.push_back(e);
        }
    }
    return out;
}

inline std::vector<Vec> box_corners(const Vec& lo, const Vec& hi) {
    std::vector<Vec> out;
    const Eigen::Index n = lo.size();
    for (long mask = 0; mask < (1L << n); ++mask) {
        Vec c(n);
        for (Eigen::Index i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        out.push_back(c);
    }
    return out;
}

inline double min_over(const std::vector<Vec>& pts, const Vec& z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, p.dot(z));
    return best;
}

// Orthogonal projector onto span(u) for a single nonzero vector u.
inline Mat rank_one_projector(const Vec& u) { return u * u.transpose() / u.squaredNorm(); }

// Scalar prox of phi at x with parameter beta, by golden section on a bracket.
inline double scalar_prox(const std::function<double(double)>& phi, double beta, double x, double radius = 50.0) {
    return golden_section([&](double p) { return phi(p) + (x - p) * (x - p) / (2.0 * beta); }, x - radius, x + radius,
                          1e-12);
}

}  // namespace oracle
