#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>

namespace bitpin {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Pinball loss parameters. `tau` selects the slope on the negative side
/// (0 is the hinge loss, -1 the linear loss); `c` is the margin bias.
class PinballParams {
public:
    PinballParams() = default;
    PinballParams(double tau, double c);

    double tau() const { return tau_; }
    double c() const { return c_; }

private:
    double tau_ = -0.5;
    double c_ = 1.0;
};

/// One-bit measurement system: U is n x m with column i the measurement
/// vector u_i, y holds the m observed signs.
class ProblemData {
public:
    ProblemData(Matrix U, Vector y);

    const Matrix& U() const { return *U_; }
    const Vector& y() const { return y_; }
    Eigen::Index n() const { return U_->rows(); }
    Eigen::Index m() const { return U_->cols(); }

    /// Cached ||u_i||_2.
    const Vector& column_norms() const { return *column_norms_; }

    /// (1/m) sum_i y_i u_i
    Vector mean_correlation() const;

    /// Same measurement vectors with a different sign vector; U is shared, not copied.
    ProblemData with_signs(Vector y) const;

private:
    ProblemData() = default;
    static void check_signs(const Vector& y, Eigen::Index m);

    std::shared_ptr<const Matrix> U_;
    Vector y_;
    std::shared_ptr<const Vector> column_norms_;
};

/// Dual iterate of the elastic-net pin-SVM: beta, xi and the cached
/// aggregates s = sum_i xi_i y_i u_i and w = s - beta.
struct DualState {
    Vector beta;
    Vector xi;
    Vector s;
    Vector w;

    /// Builds a state from (beta, xi), computing s and w from scratch.
    static DualState from(const ProblemData& data, Vector beta, Vector xi);
};

double pinball_value(double t, const PinballParams& params);

/// (1/m) sum_i L_tau(c - y_i u_i^T x)
double piht_objective(const Vector& x, const ProblemData& data, const PinballParams& params);

/// Same as piht_objective but from precomputed margins y_i u_i^T x.
double pinball_mean(const Vector& margins, const PinballParams& params);

/// Returns U g with g_i = -y_i when y_i u_i^T x <= c and tau * y_i otherwise.
/// This is a subgradient of m * piht_objective at x.
Vector piht_subgradient(const Vector& x, const ProblemData& data, const PinballParams& params);

double epsvm_primal_objective(const Vector& x, const ProblemData& data, const PinballParams& params,
                              double mu);

/// c * sum_i xi_i - ||w||_2. Throws if the state lies outside the dual box.
double epsvm_dual_objective(const DualState& state, const ProblemData& data,
                            const PinballParams& params, double mu);

}  // namespace bitpin
