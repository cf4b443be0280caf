#pragma once

#include "bitpin/loss.hpp"
#include "bitpin/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bitpin {

struct EpsvmConfig {
    PinballParams params{-0.5, 1.0};
    /// l1 weight; must be set by the caller (see default_mu).
    double mu = 0.0;
    int l_max = 100;
    /// Sweep-to-sweep ||xi change||_inf threshold; (1 + tau) / (10 m) when unset.
    std::optional<double> delta;
    /// Visit coordinates in a fresh random order each sweep instead of 1..m.
    bool shuffle = false;
    Seed shuffle_seed{};
    /// Rebuild s = sum xi_i y_i u_i from scratch every this many sweeps.
    int refresh_every = 10;
    /// Record the dual objective after every coordinate and beta update.
    bool record_dual_trace = false;

    void validate() const;
    double stop_threshold(Eigen::Index m) const;

    /// C(tau) with mu = C sqrt(log n / m): 0.6, 0.7, 0.8, 0.9, 1.0 at
    /// tau = -0.4, -0.5, -0.7, -0.9, -1.0, linear in between, clamped outside.
    static double default_mu_factor(double tau);
    static double mu_from_factor(double factor, Eigen::Index n, Eigen::Index m);
    static double default_mu(double tau, Eigen::Index n, Eigen::Index m);
};

enum class EpsvmStatus { on_sphere, zero_optimal, degenerate };

const char* to_string(EpsvmStatus status);

struct EpsvmResult {
    Vector x;
    EpsvmStatus status = EpsvmStatus::on_sphere;
    double dual_objective = 0.0;
    double primal_objective = 0.0;
    double kkt_residual = 0.0;
    int sweeps = 0;
    /// Stopped on the xi-change threshold rather than on l_max.
    bool converged = false;
    Vector beta;
    Vector xi;
    std::vector<double> dual_trace;
    std::vector<std::string> warnings;
};

/// Componentwise clamp of s to [-mu, mu].
Vector beta_update(const Vector& s, double mu);

/// Optimal increment of xi_i given w = sum xi y u - beta. Maximizes
/// c d - ||y_i u_i d + w||_2 over -tau/m <= xi_i + d <= 1/m.
double xi_step(double xi_i, const Vector& u_i, double y_i, const Vector& w, const PinballParams& params,
               Eigen::Index m);

/// xi_step from precomputed inner products: ||u_i||^2, y_i u_i^T w and ||w||^2.
double xi_step(double xi_i, double u_norm2, double y_u_dot_w, double w_norm2, const PinballParams& params,
               Eigen::Index m);

/// Dual coordinate ascent for
///   min mu ||x||_1 + (1/m) sum L_tau(c - y_i u_i^T x)  s.t.  ||x||_2 <= 1.
EpsvmResult epsvm_solve(const ProblemData& data, const EpsvmConfig& config);

/// tau = -1 case: normalized soft-thresholding of (1/m) sum y_i u_i.
EpsvmResult passive_closed_form(const ProblemData& data, double mu, double c = 1.0);

/// Largest violation of the optimality conditions for (x, xi): xi box
/// membership (scaled by m), complementarity between xi_i and
/// c - y_i u_i^T x, the l1 / correlation balance, and stationarity of x
/// against the soft-thresholded aggregate. Zero iff all hold.
double check_optimality(const Vector& x, const Vector& xi, const ProblemData& data, const EpsvmConfig& config);

/// True when some coordinate j has min over the xi box of
/// |(sum xi_i y_i u_i)_j| above mu, which separates the two hypercubes and
/// puts the solution on the unit sphere.
bool hypercube_separation(const ProblemData& data, const PinballParams& params, double mu);

}  // namespace bitpin
