#include "bitpin/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bitpin {

namespace {

constexpr double kBoxSlack = 1e-12;

void require_length(const Vector& x, Eigen::Index n, const char* what)
{
    if (x.size() != n) {
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) +
                                    ", got " + std::to_string(x.size()));
    }
}

}  // namespace

PinballParams::PinballParams(double tau, double c) : tau_(tau), c_(c)
{
    if (!(tau >= -1.0 && tau <= 0.0)) {
        throw std::invalid_argument("pinball tau must lie in [-1, 0], got " + std::to_string(tau));
    }
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("pinball bias c must be finite and >= 0, got " + std::to_string(c));
    }
}

ProblemData::ProblemData(Matrix U, Vector y) : y_(std::move(y))
{
    if (U.rows() == 0 || U.cols() == 0) {
        throw std::invalid_argument("measurement matrix must have positive dimensions");
    }
    check_signs(y_, U.cols());
    if (!U.allFinite()) {
        throw std::invalid_argument("measurement matrix has non-finite entries");
    }
    Vector norms = U.colwise().norm().transpose();
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
        if (norms[i] == 0.0) {
            throw std::invalid_argument("measurement vector " + std::to_string(i) + " is zero");
        }
    }
    U_ = std::make_shared<const Matrix>(std::move(U));
    column_norms_ = std::make_shared<const Vector>(std::move(norms));
}

void ProblemData::check_signs(const Vector& y, Eigen::Index m)
{
    require_length(y, m, "measurements");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 1.0 && y[i] != -1.0) {
            throw std::invalid_argument("measurement " + std::to_string(i) + " is not +-1");
        }
    }
}

ProblemData ProblemData::with_signs(Vector y) const
{
    check_signs(y, m());
    ProblemData out;
    out.U_ = U_;
    out.y_ = std::move(y);
    out.column_norms_ = column_norms_;
    return out;
}

Vector ProblemData::mean_correlation() const
{
    return (*U_ * y_) / static_cast<double>(m());
}

DualState DualState::from(const ProblemData& data, Vector beta, Vector xi)
{
    require_length(beta, data.n(), "beta");
    require_length(xi, data.m(), "xi");
    DualState state;
    state.s = data.U() * xi.cwiseProduct(data.y());
    state.w = state.s - beta;
    state.beta = std::move(beta);
    state.xi = std::move(xi);
    return state;
}

double pinball_value(double t, const PinballParams& params)
{
    return t >= 0.0 ? t : -params.tau() * t;
}

double pinball_mean(const Vector& margins, const PinballParams& params)
{
    double total = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
        total += pinball_value(params.c() - margins[i], params);
    }
    return total / static_cast<double>(margins.size());
}

double piht_objective(const Vector& x, const ProblemData& data, const PinballParams& params)
{
    require_length(x, data.n(), "piht_objective");
    const Vector margins = (data.U().transpose() * x).cwiseProduct(data.y());
    return pinball_mean(margins, params);
}

Vector piht_subgradient(const Vector& x, const ProblemData& data, const PinballParams& params)
{
    require_length(x, data.n(), "piht_subgradient");
    const Vector margins = (data.U().transpose() * x).cwiseProduct(data.y());
    Vector g(data.m());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        g[i] = margins[i] <= params.c() ? -data.y()[i] : params.tau() * data.y()[i];
    }
    return data.U() * g;
}

double epsvm_primal_objective(const Vector& x, const ProblemData& data, const PinballParams& params,
                              double mu)
{
    require_length(x, data.n(), "epsvm_primal_objective");
    if (!(mu > 0.0)) {
        throw std::invalid_argument("mu must be positive");
    }
    return mu * x.lpNorm<1>() + piht_objective(x, data, params);
}

double epsvm_dual_objective(const DualState& state, const ProblemData& data,
                            const PinballParams& params, double mu)
{
    require_length(state.beta, data.n(), "beta");
    require_length(state.xi, data.m(), "xi");
    require_length(state.w, data.n(), "w");
    const double m = static_cast<double>(data.m());
    if (state.beta.size() > 0 && state.beta.lpNorm<Eigen::Infinity>() > mu * (1.0 + kBoxSlack)) {
        throw std::invalid_argument("dual state infeasible: ||beta||_inf exceeds mu");
    }
    const double lo = -params.tau() / m;
    const double hi = 1.0 / m;
    for (Eigen::Index i = 0; i < state.xi.size(); ++i) {
        if (state.xi[i] < lo - kBoxSlack * hi || state.xi[i] > hi + kBoxSlack * hi) {
            throw std::invalid_argument("dual state infeasible: xi_" + std::to_string(i) +
                                        " outside [-tau/m, 1/m]");
        }
    }
    return params.c() * state.xi.sum() - state.w.norm();
}

}  // namespace bitpin
