#pragma once

#include "bitpin/loss.hpp"
#include "bitpin/random.hpp"
#include "bitpin/sensing.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace test_support {

using bitpin::Engine;
using bitpin::Matrix;
using bitpin::Vector;

inline Vector gaussian_vector(Eigen::Index n, Engine& rng)
{
    boost::random::normal_distribution<double> normal;
    Vector v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        v[j] = normal(rng);
    }
    return v;
}

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng)
{
    boost::random::normal_distribution<double> normal;
    Matrix M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            M(i, j) = normal(rng);
        }
    }
    return M;
}

inline double uniform(double lo, double hi, Engine& rng)
{
    return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(int lo, int hi, Engine& rng)
{
    return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Vector random_signs(Eigen::Index m, Engine& rng)
{
    Vector y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        y[i] = uniform_int(0, 1, rng) == 0 ? -1.0 : 1.0;
    }
    return y;
}

/// Unstructured instance: Gaussian U, random signs.
inline bitpin::ProblemData gaussian_problem(Eigen::Index n, Eigen::Index m, Engine& rng)
{
    Matrix U = gaussian_matrix(n, m, rng);
    Vector y = random_signs(m, rng);
    return bitpin::ProblemData(std::move(U), std::move(y));
}

/// Scalar pinball loss written out independently of the library.
inline double pinball_oracle(double t, double tau)
{
    return t >= 0.0 ? t : -tau * t;
}

/// (1/m) sum_i L_tau(c - y_i u_i^T x), one explicit loop per term.
inline double objective_oracle(const Vector& x, const Matrix& U, const Vector& y, double tau, double c)
{
    double total = 0.0;
    for (Eigen::Index i = 0; i < U.cols(); ++i) {
        double dot = 0.0;
        for (Eigen::Index j = 0; j < U.rows(); ++j) {
            dot += U(j, i) * x[j];
        }
        total += pinball_oracle(c - y[i] * dot, tau);
    }
    return total / static_cast<double>(U.cols());
}

/// Best K-term approximation by trying every support. Among minimizers the
/// lexicographically smallest sorted support wins, which is the
/// lowest-index tie rule.
inline Vector exhaustive_threshold(const Vector& a, int K)
{
    const int n = static_cast<int>(a.size());
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.begin(), pick.begin() + K, 1);
    double best = std::numeric_limits<double>::infinity();
    Vector best_z;
    // prev_permutation from the all-leading-ones state visits supports in lexicographic order
    do {
        Vector z = Vector::Zero(n);
        for (int j = 0; j < n; ++j) {
            if (pick[static_cast<std::size_t>(j)]) {
                z[j] = a[j];
            }
        }
        const double err = (a - z).squaredNorm();
        if (err < best) {
            best = err;
            best_z = z;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best_z;
}

/// c d - ||y u d + w||, the per-coordinate dual objective up to constants.
inline double xi_objective(double d, const Vector& u, double y, const Vector& w, double c)
{
    return c * d - (y * d * u + w).norm();
}

/// Maximizer over [lo, hi] by a grid scan followed by golden-section refinement.
inline double golden_max(double lo, double hi, const Vector& u, double y, const Vector& w, double c)
{
    if (hi <= lo) {
        return lo;
    }
    const int grid = 2000;
    int best = 0;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= grid; ++k) {
        const double f = xi_objective(lo + (hi - lo) * k / grid, u, y, w, c);
        if (f > best_f) {
            best_f = f;
            best = k;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / grid;
    double b = lo + (hi - lo) * std::min(grid, best + 1) / grid;
    const double r = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = xi_objective(x1, u, y, w, c), f2 = xi_objective(x2, u, y, w, c);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = xi_objective(x2, u, y, w, c);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = xi_objective(x1, u, y, w, c);
        }
    }
    double mid = (a + b) / 2;
    // the ends of the interval are candidates too
    for (double e : {lo, hi}) {
        if (xi_objective(e, u, y, w, c) > xi_objective(mid, u, y, w, c)) {
            mid = e;
        }
    }
    return mid;
}

/// min / max of (sum xi_i y_i u_i)_j over all vertices of the xi box.
inline bool vertex_separation(const bitpin::ProblemData& d, const bitpin::PinballParams& p, double mu)
{
    const Eigen::Index m = d.m();
    const double lo = -p.tau() / m, hi = 1.0 / m;
    Vector zmin = Vector::Constant(d.n(), std::numeric_limits<double>::infinity());
    Vector zmax = -zmin;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        Vector z = Vector::Zero(d.n());
        for (Eigen::Index i = 0; i < m; ++i) {
            z += ((mask >> i) & 1u ? hi : lo) * d.y()[i] * d.U().col(i);
        }
        zmin = zmin.cwiseMin(z);
        zmax = zmax.cwiseMax(z);
    }
    for (Eigen::Index j = 0; j < d.n(); ++j) {
        if (zmin[j] > mu || zmax[j] < -mu) {
            return true;
        }
    }
    return false;
}

}  // namespace test_support
