#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cgalp {

// Every Hilbert-space element in the library is a flat column vector of
// doubles. Matrices are flattened column-major when they travel through a
// LinearMap or an oracle.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonFiniteError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Builds a vector from raw entries, rejecting NaN and Inf.
Vector make_vector(std::span<const double> entries);
Vector make_vector(std::initializer_list<double> entries);

/// Builds a rows x cols matrix from row-major entries, rejecting NaN and Inf.
Matrix make_matrix(Eigen::Index rows, Eigen::Index cols, std::span<const double> row_major);

bool all_finite(const Vector& x);

double inner(const Vector& x, const Vector& y);
double norm(const Vector& x);

Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, Eigen::Index rows, Eigen::Index cols);

/// Bounded linear operator between two finite-dimensional spaces, given by
/// its action and the action of its adjoint.
class LinearMap {
public:
    using Action = std::function<Vector(const Vector&)>;

    LinearMap(Eigen::Index in_dim, Eigen::Index out_dim, Action forward, Action adjoint,
              std::optional<double> op_norm_bound = std::nullopt);

    static LinearMap identity(Eigen::Index dim);
    static LinearMap zero(Eigen::Index in_dim, Eigen::Index out_dim);
    static LinearMap scaled_identity(Eigen::Index dim, double scale);
    /// Dense matrix acting on column vectors; adjoint is the transpose.
    static LinearMap from_matrix(Matrix m);

    Eigen::Index in_dim() const { return in_dim_; }
    Eigen::Index out_dim() const { return out_dim_; }
    const std::optional<double>& op_norm_bound() const { return op_norm_bound_; }

    Vector apply(const Vector& x) const;
    Vector apply_adjoint(const Vector& y) const;

    /// Materializes the operator as a dense out_dim x in_dim matrix.
    Matrix to_dense() const;

private:
    Eigen::Index in_dim_;
    Eigen::Index out_dim_;
    Action forward_;
    Action adjoint_;
    std::optional<double> op_norm_bound_;
};

/// max over random probes of |<Ax,y> - <x,A*y>| / (|x||y||A| + 1).
double adjoint_mismatch(const LinearMap& op, int probes, std::uint64_t seed);

/// Observation operator keeping a fixed subset of the entries of an N x N
/// matrix. Kept positions are sorted by (row, col) and define the order of
/// the observation vector.
class MaskOperator {
public:
    using Position = std::pair<Eigen::Index, Eigen::Index>;

    MaskOperator(Eigen::Index n, std::vector<Position> kept);

    Eigen::Index n() const { return n_; }
    Eigen::Index observed() const { return static_cast<Eigen::Index>(kept_.size()); }
    const std::vector<Position>& kept_indices() const { return kept_; }

    Vector apply(const Vector& flat_matrix) const;
    Vector apply_adjoint(const Vector& observations) const;

    LinearMap as_linear_map() const;

private:
    Eigen::Index n_;
    std::vector<Position> kept_;
    std::vector<Eigen::Index> flat_;
};

struct SingularTriple {
    double sigma = 0.0;
    Vector u;
    Vector v;
    double residual = 0.0;  // |M^T u - sigma v| + |M v - sigma u|
    int iterations = 0;
};

class PowerIterationError : public std::runtime_error {
public:
    PowerIterationError(const std::string& what, SingularTriple best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SingularTriple& best() const { return best_; }

private:
    SingularTriple best_;
};

struct PowerSvdOptions {
    double tol = 1e-9;  // relative to |M|_F
    int max_iters = 5000;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    /// The start vector is first multiplied by (M^T M)^(2^gram_squarings),
    /// formed by repeated squaring. 0 gives the plain method.
    int gram_squarings = 12;
};

/// Leading singular triple by power iteration on M^T M. Starts from a seeded
/// random vector and restarts once from a second seed when the first attempt
/// exhausts max_iters. Throws PowerIterationError carrying the best iterate if
/// neither attempt reaches the tolerance. The residual test is
/// |M^T u - sigma v| <= tol |M|_F with u = Mv / |Mv|.
SingularTriple power_svd_top(const Matrix& m, const PowerSvdOptions& options = {});

/// Power-method estimate of |A|. Nondecreasing in iters; 0 for the zero map.
double operator_norm_estimate(const LinearMap& op, int iters, std::uint64_t seed = 7);

}  // namespace cgalp
