#include "bitpin/epsvm.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace bitpin {

namespace {

// xi within this many multiples of 1/m of a box bound counts as sitting on it.
constexpr double kBoundTolerance = 1e-9;
constexpr double kSphereTolerance = 1e-9;

double clamp(double v, double lo, double hi)
{
    return std::max(lo, std::min(hi, v));
}

Vector soft_threshold(const Vector& s, double mu)
{
    return s - beta_update(s, mu);
}

double median(Vector v)
{
    auto* first = v.data();
    auto* last = v.data() + v.size();
    auto* mid = first + v.size() / 2;
    std::nth_element(first, mid, last);
    return *mid;
}

void fill_objectives(EpsvmResult& result, const ProblemData& data, const EpsvmConfig& config)
{
    const DualState state = DualState::from(data, result.beta, result.xi);
    result.dual_objective = epsvm_dual_objective(state, data, config.params, config.mu);
    result.primal_objective = epsvm_primal_objective(result.x, data, config.params, config.mu);
    result.kkt_residual = check_optimality(result.x, result.xi, data, config);
}

}  // namespace

void EpsvmConfig::validate() const
{
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("ep-SVM mu must be positive");
    }
    if (l_max < 1) {
        throw std::invalid_argument("ep-SVM l_max must be >= 1");
    }
    if (delta && !(*delta > 0.0 || (*delta == 0.0 && params.tau() == -1.0))) {
        throw std::invalid_argument("ep-SVM delta must be positive when tau > -1");
    }
    if (refresh_every < 1) {
        throw std::invalid_argument("ep-SVM refresh_every must be >= 1");
    }
}

double EpsvmConfig::stop_threshold(Eigen::Index m) const
{
    return delta.value_or((1.0 + params.tau()) / (10.0 * static_cast<double>(m)));
}

double EpsvmConfig::default_mu_factor(double tau)
{
    static constexpr std::array<std::pair<double, double>, 5> table{{
        {-1.0, 1.0},
        {-0.9, 0.9},
        {-0.7, 0.8},
        {-0.5, 0.7},
        {-0.4, 0.6},
    }};
    if (tau <= table.front().first) {
        return table.front().second;
    }
    if (tau >= table.back().first) {
        return table.back().second;
    }
    for (std::size_t k = 1; k < table.size(); ++k) {
        const auto [t1, c1] = table[k];
        if (tau <= t1) {
            const auto [t0, c0] = table[k - 1];
            return c0 + (c1 - c0) * (tau - t0) / (t1 - t0);
        }
    }
    return table.back().second;
}

double EpsvmConfig::mu_from_factor(double factor, Eigen::Index n, Eigen::Index m)
{
    return factor * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(m));
}

double EpsvmConfig::default_mu(double tau, Eigen::Index n, Eigen::Index m)
{
    return mu_from_factor(default_mu_factor(tau), n, m);
}

const char* to_string(EpsvmStatus status)
{
    switch (status) {
    case EpsvmStatus::on_sphere:
        return "on_sphere";
    case EpsvmStatus::zero_optimal:
        return "zero_optimal";
    case EpsvmStatus::degenerate:
        return "degenerate";
    }
    return "unknown";
}

Vector beta_update(const Vector& s, double mu)
{
    return s.cwiseMax(-mu).cwiseMin(mu);
}

double xi_step(double xi_i, double u_norm2, double y_u_dot_w, double w_norm2, const PinballParams& params,
               Eigen::Index m)
{
    const double md = static_cast<double>(m);
    const double lo = -params.tau() / md;
    const double hi = 1.0 / md;
    const double slack = kBoundTolerance * hi;
    if (xi_i < lo - slack || xi_i > hi + slack) {
        throw std::invalid_argument("xi_step: xi_i outside [-tau/m, 1/m]");
    }
    const double c = params.c();
    if (std::sqrt(u_norm2) <= c) {
        return hi - xi_i;
    }
    const double gap = u_norm2 - c * c;
    const double A = u_norm2 * gap;
    const double B = 2.0 * gap * y_u_dot_w;
    // B^2 - 4AC in factored form; the last factor is >= 0 by Cauchy-Schwarz
    const double disc = std::max(0.0, 4.0 * c * c * gap * (u_norm2 * w_norm2 - y_u_dot_w * y_u_dot_w));
    const double d_bar = (-B + std::sqrt(disc)) / (2.0 * A);
    return clamp(xi_i + d_bar, lo, hi) - xi_i;
}

double xi_step(double xi_i, const Vector& u_i, double y_i, const Vector& w, const PinballParams& params,
               Eigen::Index m)
{
    if (u_i.size() != w.size()) {
        throw std::invalid_argument("xi_step: dimension mismatch");
    }
    return xi_step(xi_i, u_i.squaredNorm(), y_i * u_i.dot(w), w.squaredNorm(), params, m);
}

EpsvmResult epsvm_solve(const ProblemData& data, const EpsvmConfig& config)
{
    config.validate();
    const Eigen::Index n = data.n();
    const Eigen::Index m = data.m();
    const double md = static_cast<double>(m);
    const double lo = -config.params.tau() / md;
    const double hi = 1.0 / md;
    const double c = config.params.c();
    const double delta = config.stop_threshold(m);
    const Matrix& U = data.U();
    const Vector& y = data.y();
    const Vector u_norm2 = data.column_norms().cwiseAbs2();

    EpsvmResult result;
    if (c >= median(data.column_norms())) {
        result.warnings.emplace_back(
            "c is at least the median measurement norm; most dual coordinates are pinned to 1/m "
            "and the model behaves like the passive (tau = -1) model");
    }

    Vector xi = Vector::Constant(m, lo);
    Vector beta = Vector::Zero(n);
    Vector s = U * xi.cwiseProduct(y);
    Vector w = s - beta;
    double xi_sum = xi.sum();

    auto record = [&] {
        if (config.record_dual_trace) {
            result.dual_trace.push_back(c * xi_sum - w.norm());
        }
    };
    record();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Engine shuffle_engine = make_engine(config.shuffle_seed);

    Vector xi_prev(m);
    for (int sweep = 1; sweep <= config.l_max; ++sweep) {
        xi_prev = xi;
        if (config.shuffle) {
            for (std::size_t k = order.size(); k > 1; --k) {
                boost::random::uniform_int_distribution<std::size_t> pick(0, k - 1);
                std::swap(order[k - 1], order[pick(shuffle_engine)]);
            }
        }
        for (const auto i : order) {
            double next;
            if (data.column_norms()[i] <= c) {
                next = hi;
            } else {
                const double d = xi_step(xi[i], u_norm2[i], y[i] * U.col(i).dot(w), w.squaredNorm(),
                                         config.params, m);
                next = clamp(xi[i] + d, lo, hi);
            }
            const double d = next - xi[i];
            if (d != 0.0) {
                w.noalias() += (y[i] * d) * U.col(i);
                s.noalias() += (y[i] * d) * U.col(i);
                xi[i] = next;
                xi_sum += d;
            }
            record();
        }
        if (sweep % config.refresh_every == 0) {
            s.noalias() = U * xi.cwiseProduct(y);
            xi_sum = xi.sum();
        }
        beta = beta_update(s, config.mu);
        w = s - beta;
        record();

        result.sweeps = sweep;
        const double change = (xi - xi_prev).lpNorm<Eigen::Infinity>();
        if (change < delta || change == 0.0) {
            result.converged = true;
            break;
        }
    }

    if ((xi.array() == hi).all()) {
        // rebuild s the way the closed form does so the mu = ||s_bar|| boundary agrees exactly
        s = data.mean_correlation();
        beta = beta_update(s, config.mu);
        w = s - beta;
    }
    if (w.norm() > 0.0) {
        result.x = w / w.norm();
        result.status = EpsvmStatus::on_sphere;
        result.xi = std::move(xi);
        result.beta = std::move(beta);
    } else {
        result.x = Vector::Zero(n);
        const Vector s_bar = data.mean_correlation();
        if (s_bar.lpNorm<Eigen::Infinity>() <= config.mu) {
            // x = 0 is optimal and xi = 1/m certifies it.
            result.status = EpsvmStatus::zero_optimal;
            result.xi = Vector::Constant(m, hi);
            result.beta = beta_update(s_bar, config.mu);
        } else {
            result.status = EpsvmStatus::degenerate;
            result.xi = std::move(xi);
            result.beta = std::move(beta);
            result.warnings.emplace_back("dual aggregate vanished with mixed xi; try a smaller mu");
        }
    }
    fill_objectives(result, data, config);
    return result;
}

EpsvmResult passive_closed_form(const ProblemData& data, double mu, double c)
{
    EpsvmConfig config;
    config.params = PinballParams(-1.0, c);
    config.mu = mu;
    config.validate();

    const Vector s = data.mean_correlation();
    EpsvmResult result;
    result.beta = beta_update(s, mu);
    const Vector w = s - result.beta;
    result.xi = Vector::Constant(data.m(), 1.0 / static_cast<double>(data.m()));
    result.sweeps = 1;
    result.converged = true;
    const double norm = w.norm();
    if (norm > 0.0) {
        result.x = w / norm;
        result.status = EpsvmStatus::on_sphere;
    } else {
        result.x = Vector::Zero(data.n());
        result.status = EpsvmStatus::zero_optimal;
    }
    fill_objectives(result, data, config);
    return result;
}

double check_optimality(const Vector& x, const Vector& xi, const ProblemData& data, const EpsvmConfig& config)
{
    if (x.size() != data.n() || xi.size() != data.m()) {
        throw std::invalid_argument("check_optimality: dimension mismatch");
    }
    const double x_norm = x.norm();
    if (x_norm > 1.0 + kSphereTolerance) {
        throw std::invalid_argument("check_optimality: ||x||_2 exceeds 1");
    }
    const double md = static_cast<double>(data.m());
    const double lo = -config.params.tau() / md;
    const double hi = 1.0 / md;
    const double c = config.params.c();
    const double mu = config.mu;

    double residual = 0.0;
    const Vector margins = (data.U().transpose() * x).cwiseProduct(data.y());
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
        residual = std::max(residual, md * std::max({0.0, lo - xi[i], xi[i] - hi}));

        const bool at_upper = std::abs(xi[i] - hi) * md <= kBoundTolerance;
        const bool at_lower = std::abs(xi[i] - lo) * md <= kBoundTolerance;
        const double r = c - margins[i];
        double violation;
        if (at_upper && at_lower) {
            violation = 0.0;
        } else if (at_upper) {
            violation = std::max(0.0, -r);
        } else if (at_lower) {
            violation = std::max(0.0, r);
        } else {
            violation = std::abs(r);
        }
        residual = std::max(residual, violation);
    }

    const Vector s = data.U() * xi.cwiseProduct(data.y());
    const double balance = mu * x.lpNorm<1>() - s.dot(x);
    const bool on_sphere = std::abs(x_norm - 1.0) <= kSphereTolerance;
    residual = std::max(residual, on_sphere ? std::max(0.0, balance) : std::abs(balance));

    const Vector w = soft_threshold(s, mu);
    const double w_norm = w.norm();
    if (on_sphere && w_norm > 0.0) {
        residual = std::max(residual, (x - w / w_norm).lpNorm<Eigen::Infinity>());
    } else {
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double v = x[j] == 0.0 ? std::max(0.0, std::abs(s[j]) - mu)
                                         : std::abs(s[j] - mu * (x[j] > 0.0 ? 1.0 : -1.0));
            residual = std::max(residual, v);
        }
    }
    return residual;
}

bool hypercube_separation(const ProblemData& data, const PinballParams& params, double mu)
{
    const double md = static_cast<double>(data.m());
    const double lo = -params.tau() / md;
    const double hi = 1.0 / md;
    for (Eigen::Index j = 0; j < data.n(); ++j) {
        double z_min = 0.0;
        double z_max = 0.0;
        for (Eigen::Index i = 0; i < data.m(); ++i) {
            const double a = data.y()[i] * data.U()(j, i);
            z_min += std::min(lo * a, hi * a);
            z_max += std::max(lo * a, hi * a);
        }
        const double closest = (z_min <= 0.0 && z_max >= 0.0) ? 0.0 : std::min(std::abs(z_min), std::abs(z_max));
        if (closest > mu) {
            return true;
        }
    }
    return false;
}

}  // namespace bitpin
