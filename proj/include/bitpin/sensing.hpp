#pragma once

#include "bitpin/loss.hpp"
#include "bitpin/random.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace bitpin {

/// Unit-norm K-sparse ground truth.
struct SparseSignal {
    Vector x;
    std::vector<Eigen::Index> support;  // sorted ascending
};

/// Pre-quantization noise level as a linear power ratio. Infinity means
/// noise-free.
struct NoiseSpec {
    double snr = std::numeric_limits<double>::infinity();

    void validate() const;
    bool noiseless() const { return snr == std::numeric_limits<double>::infinity(); }
};

/// Fraction of measurements whose sign is negated after quantization.
struct FlipSpec {
    double ratio = 0.0;

    void validate() const;
    /// round-half-up of ratio * m
    Eigen::Index count(Eigen::Index m) const;
};

SparseSignal generate_sparse_signal(Eigen::Index n, Eigen::Index K, Seed seed);

/// n x m matrix of i.i.d. standard Gaussians, filled column by column.
Matrix generate_measurement_system(Eigen::Index n, Eigen::Index m, Seed seed);

/// y_i = sgn(u_i^T x + e_i) with sgn(0) = +1. The noise variance is the
/// empirical mean of (u_i^T x)^2 divided by the SNR.
Vector quantize(const Matrix& U, const Vector& x, const NoiseSpec& noise, Seed seed);

/// Negates exactly flips.count(m) signs at positions drawn without replacement.
Vector flip_signs(const Vector& y, const FlipSpec& flips, Seed seed);

double recovery_error(const Vector& xhat, const Vector& xbar);

/// sgn with sgn(0) = +1
inline double sign_of(double v)
{
    return v >= 0.0 ? 1.0 : -1.0;
}

/// Uniform sample of `count` distinct indices from [0, n), in draw order.
std::vector<Eigen::Index> sample_without_replacement(Eigen::Index n, Eigen::Index count, Engine& engine);

/// A complete synthetic instance and the parameters that produced it.
struct GeneratedProblem {
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    Eigen::Index K = 0;
    NoiseSpec noise;
    FlipSpec flips;
    Seed seed;

    SparseSignal signal;
    Matrix U;
    Vector y;

    ProblemData data() const { return ProblemData(U, y); }
};

/// Draws signal, matrix, noise and flips from the four child streams of `seed`.
GeneratedProblem generate_problem(Eigen::Index n, Eigen::Index m, Eigen::Index K, NoiseSpec noise,
                                  FlipSpec flips, Seed seed);

}  // namespace bitpin
