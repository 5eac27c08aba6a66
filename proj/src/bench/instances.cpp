#include "cgalp/bench/instances.hpp"

#include "cgalp/product_space.hpp"
#include "cgalp/random.hpp"

#include <cmath>
#include <stdexcept>

namespace cgalp::bench {

namespace {

Vector unit_gaussian(Rng& rng, Eigen::Index dim) {
    Vector v(dim);
    for (;;) {
        for (auto& e : v) e = rng.normal();
        const double nv = v.norm();
        if (nv > 1e-8) return v / nv;
    }
}

}  // namespace

ProjectionInstance gen_projection_instance(std::uint64_t seed) {
    Rng rng(seed);
    ProjectionInstance inst;
    inst.u = unit_gaussian(rng, 2);
    inst.v = unit_gaussian(rng, 2);
    inst.A = inst.u * inst.v.transpose();
    Vector y(2);
    do {
        y[0] = rng.uniform(-2.0, 2.0);
        y[1] = rng.uniform(-2.0, 2.0);
    } while (!(y.lpNorm<1>() > 1.0 && (inst.A * y).norm() > 1e-6));
    inst.y = y;

    CompositeProblem& p = inst.problem;
    p.f_value = [y](const Vector& x) { return 0.5 * (x - y).squaredNorm(); };
    p.f_grad = [y](const Vector& x) -> Vector { return x - y; };
    p.g = zero_function();
    p.T = LinearMap::zero(2, 1);
    p.h = l1_ball_oracle(2, 1.0);
    p.A = LinearMap::from_matrix(inst.A);
    p.b = Vector::Zero(2);
    return inst;
}

MatcompInstance gen_matcomp_instance(Eigen::Index n, double density, std::uint64_t seed) {
    if (n < 5) throw std::invalid_argument("gen_matcomp_instance: N must be at least 5");
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("gen_matcomp_instance: density outside (0, 1]");
    Rng rng(seed);
    const auto un = static_cast<std::uint64_t>(n);

    Vector y_tilde = Vector::Zero(n);
    for (std::uint64_t pos : rng.sample_without_replacement(un, un / 5))
        y_tilde[static_cast<Eigen::Index>(pos)] = rng.uniform(-1.0, 1.0);
    const Matrix x0 = y_tilde * y_tilde.transpose();

    const auto kept_count = static_cast<std::uint64_t>(std::floor(density * static_cast<double>(un * un)));
    std::vector<MaskOperator::Position> kept;
    kept.reserve(kept_count);
    for (std::uint64_t flat : rng.sample_without_replacement(un * un, kept_count))
        kept.emplace_back(static_cast<Eigen::Index>(flat % un), static_cast<Eigen::Index>(flat / un));

    MaskOperator mask(n, std::move(kept));
    Vector y = mask.apply(flatten(x0));
    const double delta1 = 0.5 * y_tilde.squaredNorm();
    const double delta2 = 0.5 * x0.lpNorm<1>();
    return MatcompInstance{MatcompData{std::move(mask), std::move(y), delta1, delta2}, x0, y_tilde};
}

CompositeProblem matcomp_cgalp_problem(const MatcompData& d, NuclearLmoOptions lmo_options) {
    const Eigen::Index n = d.n();
    ProductSpec spec;
    spec.n = 2;
    spec.block_dim = n * n;
    const LinearMap omega = d.mask.as_linear_map();
    const ProxFriendly half_l1 = shifted_l1(d.y, 0.5);
    spec.g_blocks = {{half_l1, omega}, {half_l1, omega}};
    spec.h_blocks = {nuclear_ball_oracle(n, n, d.delta1, lmo_options), l1_ball_oracle(n * n, d.delta2)};
    spec.f_value = [](const Vector&) { return 0.0; };
    spec.f_grad = [](const Vector& x) -> Vector { return Vector::Zero(x.size()); };
    return lift(spec);
}

}  // namespace cgalp::bench
