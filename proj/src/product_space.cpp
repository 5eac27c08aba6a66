#include "cgalp/product_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace cgalp {

namespace {

void check_spec(const ProductSpec& spec) {
    if (spec.n < 1) throw ProductSpecError("lift: need at least one block", -1);
    if (spec.block_dim < 1) throw ProductSpecError("lift: block_dim must be positive", -1);
    if (static_cast<int>(spec.h_blocks.size()) != spec.n)
        throw ProductSpecError("lift: need one constraint set per block", -1);
    if (!spec.g_blocks.empty() && static_cast<int>(spec.g_blocks.size()) != spec.n)
        throw ProductSpecError("lift: g_blocks must be empty or have one entry per block", -1);
    if (!spec.f_value || !spec.f_grad) throw ProductSpecError("lift: f oracles missing", -1);
    for (int i = 0; i < spec.n; ++i) {
        const LmoFriendly& h = spec.h_blocks[i];
        if (!h.lmo || !h.membership) throw ProductSpecError("lift: block " + std::to_string(i) + " has no oracle", i);
        if (h.a_feasible_point.size() != spec.block_dim)
            throw ProductSpecError("lift: block " + std::to_string(i) + " has dimension " +
                                       std::to_string(h.a_feasible_point.size()) + ", expected " +
                                       std::to_string(spec.block_dim),
                                   i);
    }
    for (int i = 0; i < static_cast<int>(spec.g_blocks.size()); ++i) {
        if (spec.g_blocks[i].second.in_dim() != spec.block_dim)
            throw ProductSpecError("lift: T_" + std::to_string(i) + " does not act on the block space", i);
    }
}

Vector projector_apply(int n, Eigen::Index d, const Vector& x, bool complement) {
    if (x.size() != n * d) throw DimensionError("product projector: wrong lifted dimension");
    const Vector mean = block_mean(n, x);
    Vector out(x.size());
    for (int i = 0; i < n; ++i) {
        if (complement)
            out.segment(i * d, d) = x.segment(i * d, d) - mean;
        else
            out.segment(i * d, d) = mean;
    }
    return out;
}

}  // namespace

Vector block_mean(int n, const Vector& x) {
    if (n < 1 || x.size() % n != 0) throw DimensionError("block_mean: size not divisible by n");
    const Eigen::Index d = x.size() / n;
    Vector mean = Vector::Zero(d);
    for (int i = 0; i < n; ++i) mean += x.segment(i * d, d);
    return mean / n;
}

double weighted_inner(int n, const Vector& x, const Vector& y) { return inner(x, y) / n; }

LinearMap diagonal_complement_projector(int n, Eigen::Index block_dim) {
    auto act = [n, block_dim](const Vector& x) { return projector_apply(n, block_dim, x, true); };
    return LinearMap(n * block_dim, n * block_dim, act, act, 1.0);
}

LinearMap diagonal_projector(int n, Eigen::Index block_dim) {
    auto act = [n, block_dim](const Vector& x) { return projector_apply(n, block_dim, x, false); };
    return LinearMap(n * block_dim, n * block_dim, act, act, 1.0);
}

Vector blockwise_lmo(const ProductSpec& spec, const Vector& z_lifted) {
    const Eigen::Index d = spec.block_dim;
    if (z_lifted.size() != spec.n * d) throw DimensionError("blockwise_lmo: wrong lifted dimension");
    Vector s(z_lifted.size());
    for (int i = 0; i < spec.n; ++i) {
        try {
            s.segment(i * d, d) = spec.h_blocks[i].lmo(z_lifted.segment(i * d, d));
        } catch (const std::exception& e) {
            throw std::runtime_error("blockwise_lmo: block " + std::to_string(i) + ": " + e.what());
        }
    }
    return s;
}

CompositeProblem lift(const ProductSpec& spec_in) {
    check_spec(spec_in);
    auto spec = std::make_shared<const ProductSpec>(spec_in);
    const int n = spec->n;
    const Eigen::Index d = spec->block_dim;

    CompositeProblem p;
    p.f_value = [spec](const Vector& x) {
        const Eigen::Index d = spec->block_dim;
        double sum = 0.0;
        for (int i = 0; i < spec->n; ++i) sum += spec->f_value(x.segment(i * d, d));
        return sum / spec->n;
    };
    p.f_grad = [spec](const Vector& x) {
        const Eigen::Index d = spec->block_dim;
        Vector g(x.size());
        for (int i = 0; i < spec->n; ++i) g.segment(i * d, d) = spec->f_grad(x.segment(i * d, d)) / spec->n;
        return g;
    };

    if (spec->g_blocks.empty()) {
        p.g = zero_function();
        p.T = LinearMap::zero(n * d, 1);
    } else {
        auto offsets = std::make_shared<std::vector<Eigen::Index>>(n + 1, 0);
        for (int i = 0; i < n; ++i) (*offsets)[i + 1] = (*offsets)[i] + spec->g_blocks[i].second.out_dim();
        const Eigen::Index m = offsets->back();
        p.g.value = [spec, offsets](const Vector& w) {
            double sum = 0.0;
            for (int i = 0; i < spec->n; ++i) {
                const Eigen::Index o = (*offsets)[i];
                sum += spec->g_blocks[i].first.value(w.segment(o, (*offsets)[i + 1] - o));
            }
            return sum;
        };
        p.g.prox = [spec, offsets](double beta, const Vector& w) {
            Vector out(w.size());
            for (int i = 0; i < spec->n; ++i) {
                const Eigen::Index o = (*offsets)[i];
                const Eigen::Index len = (*offsets)[i + 1] - o;
                out.segment(o, len) = spec->g_blocks[i].first.prox(beta, w.segment(o, len));
            }
            return out;
        };
        bool all_subgrad = true;
        for (const auto& gb : spec->g_blocks) all_subgrad = all_subgrad && gb.first.min_norm_subgrad.has_value();
        if (all_subgrad) {
            p.g.min_norm_subgrad = [spec, offsets](const Vector& w) {
                Vector out(w.size());
                for (int i = 0; i < spec->n; ++i) {
                    const Eigen::Index o = (*offsets)[i];
                    const Eigen::Index len = (*offsets)[i + 1] - o;
                    out.segment(o, len) = (*spec->g_blocks[i].first.min_norm_subgrad)(w.segment(o, len));
                }
                return out;
            };
        }
        std::optional<double> t_bound = 0.0;
        for (const auto& gb : spec->g_blocks) {
            if (!gb.second.op_norm_bound()) {
                t_bound.reset();
                break;
            }
            t_bound = std::max(*t_bound, *gb.second.op_norm_bound());
        }
        p.T = LinearMap(
            n * d, m,
            [spec, offsets, m](const Vector& x) {
                const Eigen::Index d = spec->block_dim;
                Vector w(m);
                for (int i = 0; i < spec->n; ++i) {
                    const Eigen::Index o = (*offsets)[i];
                    w.segment(o, (*offsets)[i + 1] - o) = spec->g_blocks[i].second.apply(x.segment(i * d, d));
                }
                return w;
            },
            [spec, offsets](const Vector& w) {
                const Eigen::Index d = spec->block_dim;
                Vector x(spec->n * d);
                for (int i = 0; i < spec->n; ++i) {
                    const Eigen::Index o = (*offsets)[i];
                    x.segment(i * d, d) = spec->g_blocks[i].second.apply_adjoint(w.segment(o, (*offsets)[i + 1] - o));
                }
                return x;
            },
            t_bound);
    }

    p.h.lmo = [spec](const Vector& z) { return blockwise_lmo(*spec, z); };
    p.h.membership = [spec](const Vector& x, double tol) {
        const Eigen::Index d = spec->block_dim;
        if (x.size() != spec->n * d) return false;
        for (int i = 0; i < spec->n; ++i)
            if (!spec->h_blocks[i].membership(x.segment(i * d, d), tol)) return false;
        return true;
    };
    p.h.value_on_domain = [spec](const Vector& x) {
        const Eigen::Index d = spec->block_dim;
        double sum = 0.0;
        for (int i = 0; i < spec->n; ++i) {
            const auto& hv = spec->h_blocks[i].value_on_domain;
            if (hv) sum += hv(x.segment(i * d, d));
        }
        return sum;
    };
    double diam_sq = 0.0;
    p.h.a_feasible_point.resize(n * d);
    for (int i = 0; i < n; ++i) {
        diam_sq += spec->h_blocks[i].diameter_bound * spec->h_blocks[i].diameter_bound;
        p.h.a_feasible_point.segment(i * d, d) = spec->h_blocks[i].a_feasible_point;
    }
    p.h.diameter_bound = std::sqrt(diam_sq);

    p.A = diagonal_complement_projector(n, d);
    p.b = Vector::Zero(n * d);
    return p;
}

}  // namespace cgalp
