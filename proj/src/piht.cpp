#include "bitpin/piht.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bitpin {

void PihtConfig::validate(Eigen::Index n) const
{
    if (K < 1 || K > n) {
        throw std::invalid_argument("PIHT sparsity K must satisfy 1 <= K <= n (K=" + std::to_string(K) + ")");
    }
    if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) {
        throw std::invalid_argument("PIHT step size must be positive");
    }
    if (l_max < 1) {
        throw std::invalid_argument("PIHT l_max must be >= 1");
    }
    if (x0 && x0->size() != n) {
        throw std::invalid_argument("PIHT x0 has length " + std::to_string(x0->size()) + ", expected " +
                                    std::to_string(n));
    }
}

PihtConfig PihtConfig::biht(Eigen::Index K, int l_max)
{
    PihtConfig config;
    config.K = K;
    config.l_max = l_max;
    config.params = PinballParams(0.0, 0.0);
    return config;
}

Vector hard_threshold(const Vector& a, Eigen::Index K)
{
    const Eigen::Index n = a.size();
    if (K < 1 || K > n) {
        throw std::invalid_argument("hard_threshold: K must satisfy 1 <= K <= n");
    }
    if (K == n) {
        return a;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto before = [&a](Eigen::Index i, Eigen::Index j) {
        const double ai = std::abs(a[i]);
        const double aj = std::abs(a[j]);
        return ai != aj ? ai > aj : i < j;
    };
    std::nth_element(order.begin(), order.begin() + K, order.end(), before);

    Vector out = Vector::Zero(n);
    for (Eigen::Index k = 0; k < K; ++k) {
        const auto j = order[static_cast<std::size_t>(k)];
        out[j] = a[j];
    }
    return out;
}

Vector back_projection(const ProblemData& data)
{
    Vector v = data.U() * data.y();
    const double norm = v.norm();
    if (norm > 0.0) {
        v /= norm;
    }
    return v;
}

PihtResult piht_solve(const ProblemData& data, const PihtConfig& config, const IterateObserver& observer)
{
    config.validate(data.n());
    const PinballParams& params = config.params;
    const double alpha = config.step(data.m());

    Vector x = config.x0 ? *config.x0 : back_projection(data);
    Vector margins = (data.U().transpose() * x).cwiseProduct(data.y());
    Vector g(data.m());

    PihtResult result;
    result.objective_trace.reserve(static_cast<std::size_t>(config.l_max));
    for (int l = 1; l <= config.l_max; ++l) {
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g[i] = margins[i] <= params.c() ? -data.y()[i] : params.tau() * data.y()[i];
        }
        x = hard_threshold(x - alpha * (data.U() * g), config.K);
        margins.noalias() = (data.U().transpose() * x).cwiseProduct(data.y());

        const double norm = x.norm();
        result.objective_trace.push_back(norm > 0.0 ? pinball_mean(margins / norm, params)
                                                    : pinball_mean(margins, params));
        if (observer) {
            observer(l, x);
        }
    }
    result.iterations = config.l_max;

    const double norm = x.norm();
    if (norm > 0.0) {
        result.x = x / norm;
    } else {
        result.x = Vector::Zero(data.n());
        result.status = PihtStatus::degenerate;
    }
    return result;
}

}  // namespace bitpin
