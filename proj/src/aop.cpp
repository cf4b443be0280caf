#include "bitpin/aop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bitpin {

void AopConfig::validate(Eigen::Index m) const
{
    if (L < 0 || L > m) {
        throw std::invalid_argument("AOP flip budget L must satisfy 0 <= L <= m (L=" + std::to_string(L) + ")");
    }
    if (!(tau0 >= -1.0 && tau0 <= 0.0)) {
        throw std::invalid_argument("AOP tau0 must lie in [-1, 0]");
    }
    if (!(decay > 0.0 && decay <= 1.0)) {
        throw std::invalid_argument("AOP decay must lie in (0, 1]");
    }
    if (outer_max < 1) {
        throw std::invalid_argument("AOP outer_max must be >= 1");
    }
    if (!(iterate_tol >= 0.0)) {
        throw std::invalid_argument("AOP iterate_tol must be >= 0");
    }
    if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
        throw std::invalid_argument("AOP step_scale must be positive and finite");
    }
}

PihtConfig AopConfig::default_inner()
{
    PihtConfig inner;
    inner.l_max = 1;
    inner.params = PinballParams(-0.2, 0.0);
    return inner;
}

double AopConfig::tau_at(int outer) const
{
    return std::pow(decay, outer) * tau0;
}

std::vector<Eigen::Index> detect_flips(const Vector& x, const ProblemData& data, const PinballParams& params,
                                       Eigen::Index L)
{
    const Eigen::Index m = data.m();
    if (L < 0 || L > m) {
        throw std::invalid_argument("detect_flips: L out of range");
    }
    const Vector args = params.c() - (data.U().transpose() * x).cwiseProduct(data.y()).array();
    Vector loss(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        loss[i] = pinball_value(args[i], params);
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto worse = [&](Eigen::Index a, Eigen::Index b) {
        if (loss[a] != loss[b]) {
            return loss[a] > loss[b];
        }
        if (args[a] != args[b]) {
            return args[a] > args[b];
        }
        return a < b;
    };
    std::nth_element(order.begin(), order.begin() + L, order.end(), worse);
    order.resize(static_cast<std::size_t>(L));
    std::sort(order.begin(), order.end());
    return order;
}

AopResult aop_solve(const ProblemData& data, const AopConfig& config)
{
    config.validate(data.m());
    const Vector& y_original = data.y();

    AopResult result;
    Vector y_work = y_original;
    std::vector<Eigen::Index> previous;
    std::optional<Vector> warm_start = config.inner.x0;

    const double alpha = config.inner.alpha.value_or(config.step_scale / static_cast<double>(data.m()));

    for (int outer = 0; outer < config.outer_max; ++outer) {
        PihtConfig inner = config.inner;
        inner.alpha = alpha;
        inner.params = PinballParams(config.tau_at(outer), config.inner.params.c());
        inner.x0 = warm_start;

        const ProblemData working = data.with_signs(y_work);
        result.piht = piht_solve(working, inner);
        result.outer_iterations = outer + 1;

        // Nothing to pursue: a single inner solve.
        if (config.L == 0) {
            result.stabilized = true;
            break;
        }
        auto detected = detect_flips(result.piht.x, data, inner.params, config.L);
        const double moved = warm_start ? (result.piht.x - *warm_start).lpNorm<Eigen::Infinity>()
                                        : std::numeric_limits<double>::infinity();
        if (detected == previous && (moved <= config.iterate_tol || std::isinf(config.iterate_tol))) {
            result.flipped = std::move(detected);
            result.stabilized = true;
            break;
        }
        y_work = y_original;
        for (auto i : detected) {
            y_work[i] = -y_original[i];
        }
        previous = detected;
        result.flipped = std::move(detected);
        if (result.piht.status == PihtStatus::ok) {
            warm_start = result.piht.x;
        }
    }
    return result;
}

}  // namespace bitpin
