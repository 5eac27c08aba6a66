#pragma once

#include "cgalp/problem.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cgalp {

/// Data for
///   min f(x) + sum_i g_i(T_i x)  subject to  x in C_1 ∩ ... ∩ C_n,
/// which is lifted to n copies of x tied together by the consensus
/// constraint x^(1) = ... = x^(n).
struct ProductSpec {
    int n = 0;
    Eigen::Index block_dim = 0;
    /// Either empty (no g) or one (g_i, T_i) per block.
    std::vector<std::pair<ProxFriendly, LinearMap>> g_blocks;
    std::vector<LmoFriendly> h_blocks;
    std::function<double(const Vector&)> f_value;
    std::function<Vector(const Vector&)> f_grad;
};

class ProductSpecError : public std::invalid_argument {
public:
    ProductSpecError(const std::string& what, int block) : std::invalid_argument(what), block_(block) {}
    /// Offending block, or -1 when the error is not tied to one block.
    int block() const { return block_; }

private:
    int block_;
};

/// Lifted problem on R^(n * block_dim), blocks stored contiguously:
///   F(x) = (1/n) sum f(x^(i)),  G = sum g_i(T_i x^(i)),  H = sum indicator(C_i),
///   A = projector onto the orthogonal complement of the diagonal, b = 0.
///
/// Coordinates are plain Euclidean: grad F has blocks grad f(x^(i)) / n.
/// With the averaged inner product (1/n) sum <x^(i), y^(i)> every gradient
/// would be n times larger; CG directions and LMO outputs coincide either way
/// because the projector is self-adjoint for both.
CompositeProblem lift(const ProductSpec& spec);

/// Block i of the result is h_blocks[i].lmo of block i of z.
Vector blockwise_lmo(const ProductSpec& spec, const Vector& z_lifted);

/// x^(i) - (1/n) sum_j x^(j) for each block.
LinearMap diagonal_complement_projector(int n, Eigen::Index block_dim);
/// Every block replaced by the block mean.
LinearMap diagonal_projector(int n, Eigen::Index block_dim);

Vector block_mean(int n, const Vector& x);
/// (1/n) sum_i <x^(i), y^(i)>
double weighted_inner(int n, const Vector& x, const Vector& y);

}  // namespace cgalp
