#include "cgalp/linalg.hpp"

#include "cgalp/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace cgalp {

Vector make_vector(std::span<const double> entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(entries[i])) throw NonFiniteError("make_vector: non-finite entry");
        v[static_cast<Eigen::Index>(i)] = entries[i];
    }
    return v;
}

Vector make_vector(std::initializer_list<double> entries) {
    return make_vector(std::span<const double>(entries.begin(), entries.size()));
}

Matrix make_matrix(Eigen::Index rows, Eigen::Index cols, std::span<const double> row_major) {
    if (rows <= 0 || cols <= 0) throw DimensionError("make_matrix: dimensions must be positive");
    if (static_cast<Eigen::Index>(row_major.size()) != rows * cols)
        throw DimensionError("make_matrix: entry count does not match rows x cols");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double value = row_major[static_cast<std::size_t>(r * cols + c)];
            if (!std::isfinite(value)) throw NonFiniteError("make_matrix: non-finite entry");
            m(r, c) = value;
        }
    }
    return m;
}

bool all_finite(const Vector& x) { return x.allFinite(); }

double inner(const Vector& x, const Vector& y) {
    if (x.size() != y.size())
        throw DimensionError("inner: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    return x.dot(y);
}

double norm(const Vector& x) { return x.norm(); }

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unflatten(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unflatten: size does not match rows x cols");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// --- LinearMap -------------------------------------------------------------

LinearMap::LinearMap(Eigen::Index in_dim, Eigen::Index out_dim, Action forward, Action adjoint,
                     std::optional<double> op_norm_bound)
    : in_dim_(in_dim),
      out_dim_(out_dim),
      forward_(std::move(forward)),
      adjoint_(std::move(adjoint)),
      op_norm_bound_(op_norm_bound) {
    if (in_dim <= 0 || out_dim <= 0) throw DimensionError("LinearMap: dimensions must be positive");
    if (op_norm_bound && !(*op_norm_bound >= 0.0))
        throw std::invalid_argument("LinearMap: op_norm_bound must be nonnegative");
}

LinearMap LinearMap::identity(Eigen::Index dim) { return scaled_identity(dim, 1.0); }

LinearMap LinearMap::scaled_identity(Eigen::Index dim, double scale) {
    auto act = [scale](const Vector& x) -> Vector { return scale * x; };
    return LinearMap(dim, dim, act, act, std::abs(scale));
}

LinearMap LinearMap::zero(Eigen::Index in_dim, Eigen::Index out_dim) {
    return LinearMap(
        in_dim, out_dim, [out_dim](const Vector&) -> Vector { return Vector::Zero(out_dim); },
        [in_dim](const Vector&) -> Vector { return Vector::Zero(in_dim); }, 0.0);
}

LinearMap LinearMap::from_matrix(Matrix m) {
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    const double bound = m.norm();  // Frobenius bounds the spectral norm
    auto shared = std::make_shared<const Matrix>(std::move(m));
    return LinearMap(
        cols, rows, [shared](const Vector& x) -> Vector { return (*shared) * x; },
        [shared](const Vector& y) -> Vector { return shared->transpose() * y; }, bound);
}

Vector LinearMap::apply(const Vector& x) const {
    if (x.size() != in_dim_) throw DimensionError("LinearMap::apply: wrong input dimension");
    return forward_(x);
}

Vector LinearMap::apply_adjoint(const Vector& y) const {
    if (y.size() != out_dim_) throw DimensionError("LinearMap::apply_adjoint: wrong input dimension");
    return adjoint_(y);
}

Matrix LinearMap::to_dense() const {
    Matrix dense(out_dim_, in_dim_);
    Vector e = Vector::Zero(in_dim_);
    for (Eigen::Index j = 0; j < in_dim_; ++j) {
        e[j] = 1.0;
        dense.col(j) = apply(e);
        e[j] = 0.0;
    }
    return dense;
}

double adjoint_mismatch(const LinearMap& op, int probes, std::uint64_t seed) {
    Rng rng(seed);
    const double op_norm = operator_norm_estimate(op, 50, mix_seed(seed, 1));
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        Vector x(op.in_dim());
        Vector y(op.out_dim());
        for (auto& v : x) v = rng.normal();
        for (auto& v : y) v = rng.normal();
        const double lhs = inner(op.apply(x), y);
        const double rhs = inner(x, op.apply_adjoint(y));
        worst = std::max(worst, std::abs(lhs - rhs) / (x.norm() * y.norm() * op_norm + 1.0));
    }
    return worst;
}

// --- MaskOperator ----------------------------------------------------------

MaskOperator::MaskOperator(Eigen::Index n, std::vector<Position> kept) : n_(n), kept_(std::move(kept)) {
    if (n <= 0) throw DimensionError("MaskOperator: n must be positive");
    std::sort(kept_.begin(), kept_.end());
    if (std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end())
        throw std::invalid_argument("MaskOperator: duplicate kept index");
    flat_.reserve(kept_.size());
    for (const auto& [r, c] : kept_) {
        if (r < 0 || r >= n || c < 0 || c >= n) throw std::out_of_range("MaskOperator: index out of range");
        flat_.push_back(r + c * n);
    }
}

Vector MaskOperator::apply(const Vector& flat_matrix) const {
    if (flat_matrix.size() != n_ * n_) throw DimensionError("MaskOperator::apply: expected N*N entries");
    Vector out(observed());
    for (std::size_t i = 0; i < flat_.size(); ++i) out[static_cast<Eigen::Index>(i)] = flat_matrix[flat_[i]];
    return out;
}

Vector MaskOperator::apply_adjoint(const Vector& observations) const {
    if (observations.size() != observed())
        throw DimensionError("MaskOperator::apply_adjoint: wrong observation count");
    Vector out = Vector::Zero(n_ * n_);
    for (std::size_t i = 0; i < flat_.size(); ++i) out[flat_[i]] = observations[static_cast<Eigen::Index>(i)];
    return out;
}

LinearMap MaskOperator::as_linear_map() const {
    auto self = std::make_shared<const MaskOperator>(*this);
    return LinearMap(
        n_ * n_, observed(), [self](const Vector& x) { return self->apply(x); },
        [self](const Vector& y) { return self->apply_adjoint(y); }, kept_.empty() ? 0.0 : 1.0);
}

// --- Power iteration -------------------------------------------------------

namespace {

Vector random_unit(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    Vector v(dim);
    for (auto& x : v) x = rng.normal();
    return v / v.norm();
}

}  // namespace

SingularTriple power_svd_top(const Matrix& m, const PowerSvdOptions& options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("power_svd_top: tol must be positive");
    if (options.max_iters < 1) throw std::invalid_argument("power_svd_top: max_iters must be >= 1");
    const double fro = m.norm();
    if (fro == 0.0) throw std::invalid_argument("power_svd_top: zero matrix");
    const double threshold = options.tol * fro;

    SingularTriple best;
    best.residual = std::numeric_limits<double>::infinity();
    int total = 0;

    // Repeated squaring of the normalized Gram matrix gives (M^T M)^(2^j), so
    // one product with it stands in for 2^j plain power steps.
    Matrix boosted;
    if (options.gram_squarings > 0) {
        boosted = m.transpose() * m;
        boosted /= boosted.norm();
        for (int j = 0; j < options.gram_squarings; ++j) {
            boosted = (boosted * boosted).eval();
            const double bn = boosted.norm();
            if (!(bn > 0.0) || !std::isfinite(bn)) {
                boosted.resize(0, 0);
                break;
            }
            boosted /= bn;
        }
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
        Vector v = random_unit(m.cols(), mix_seed(options.seed, static_cast<std::uint64_t>(attempt)));
        if (boosted.size() > 0) {
            const Vector bv = boosted * v;
            const double bvn = bv.norm();
            if (bvn > 1e-200) v = bv / bvn;
        }
        for (int it = 0; it < options.max_iters; ++it) {
            ++total;
            Vector w = m * v;
            const double sigma = w.norm();
            if (sigma == 0.0) break;  // start vector in the kernel; next attempt
            Vector u = w / sigma;
            Vector t = m.transpose() * u;
            const double residual = (t - sigma * v).norm();
            if (residual < best.residual) {
                best.sigma = sigma;
                best.u = u;
                best.v = v;
                best.residual = residual;
                best.iterations = total;
            }
            if (residual <= threshold) return best;
            const double tn = t.norm();
            v = t / tn;
        }
    }
    if (best.u.size() == 0) {
        best.u = Vector::Zero(m.rows());
        best.v = Vector::Zero(m.cols());
    }
    throw PowerIterationError("power_svd_top: no convergence within max_iters (two starts)", best);
}

double operator_norm_estimate(const LinearMap& op, int iters, std::uint64_t seed) {
    if (iters < 1) throw std::invalid_argument("operator_norm_estimate: iters must be >= 1");
    Vector v = random_unit(op.in_dim(), seed);
    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        const Vector w = op.apply(v);
        estimate = std::max(estimate, w.norm());
        const Vector t = op.apply_adjoint(w);
        const double tn = t.norm();
        if (tn == 0.0) break;
        v = t / tn;
    }
    return estimate;
}

}  // namespace cgalp
