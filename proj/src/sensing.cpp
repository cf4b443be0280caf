#include "bitpin/sensing.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bitpin {

void NoiseSpec::validate() const
{
    if (!(snr > 0.0)) {
        throw std::invalid_argument("snr must be positive, got " + std::to_string(snr));
    }
}

void FlipSpec::validate() const
{
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw std::invalid_argument("flip ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
}

Eigen::Index FlipSpec::count(Eigen::Index m) const
{
    validate();
    const auto k = static_cast<Eigen::Index>(std::floor(ratio * static_cast<double>(m) + 0.5));
    return std::min(k, m);
}

std::vector<Eigen::Index> sample_without_replacement(Eigen::Index n, Eigen::Index count, Engine& engine)
{
    if (count < 0 || count > n) {
        throw std::invalid_argument("cannot sample " + std::to_string(count) + " of " + std::to_string(n));
    }
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < count; ++i) {
        boost::random::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(engine))]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

SparseSignal generate_sparse_signal(Eigen::Index n, Eigen::Index K, Seed seed)
{
    if (K < 1 || K > n) {
        throw std::invalid_argument("sparsity K must satisfy 1 <= K <= n (K=" + std::to_string(K) +
                                    ", n=" + std::to_string(n) + ")");
    }
    Engine engine = make_engine(seed);
    SparseSignal signal;
    signal.support = sample_without_replacement(n, K, engine);
    std::sort(signal.support.begin(), signal.support.end());

    boost::random::normal_distribution<double> gauss;
    signal.x = Vector::Zero(n);
    for (auto j : signal.support) {
        signal.x[j] = gauss(engine);
    }
    const double norm = signal.x.norm();
    // A draw of exact zeros has probability zero but is not impossible.
    if (norm == 0.0) {
        signal.x[signal.support.front()] = 1.0;
    } else {
        signal.x /= norm;
    }
    return signal;
}

Matrix generate_measurement_system(Eigen::Index n, Eigen::Index m, Seed seed)
{
    if (n < 1 || m < 1) {
        throw std::invalid_argument("measurement system needs n, m >= 1");
    }
    Engine engine = make_engine(seed);
    boost::random::normal_distribution<double> gauss;
    Matrix U(n, m);
    double* data = U.data();
    for (Eigen::Index k = 0; k < n * m; ++k) {
        data[k] = gauss(engine);
    }
    return U;
}

Vector quantize(const Matrix& U, const Vector& x, const NoiseSpec& noise, Seed seed)
{
    noise.validate();
    if (U.rows() != x.size()) {
        throw std::invalid_argument("quantize: signal length " + std::to_string(x.size()) +
                                    " does not match matrix rows " + std::to_string(U.rows()));
    }
    Vector analog = U.transpose() * x;
    if (!noise.noiseless()) {
        const double power = analog.squaredNorm() / static_cast<double>(analog.size());
        const double sigma = std::sqrt(power / noise.snr);
        Engine engine = make_engine(seed);
        boost::random::normal_distribution<double> gauss(0.0, 1.0);
        for (Eigen::Index i = 0; i < analog.size(); ++i) {
            analog[i] += sigma * gauss(engine);
        }
    }
    return analog.unaryExpr([](double v) { return sign_of(v); });
}

Vector flip_signs(const Vector& y, const FlipSpec& flips, Seed seed)
{
    const Eigen::Index m = y.size();
    Engine engine = make_engine(seed);
    Vector out = y;
    for (auto i : sample_without_replacement(m, flips.count(m), engine)) {
        out[i] = -out[i];
    }
    return out;
}

double recovery_error(const Vector& xhat, const Vector& xbar)
{
    if (xhat.size() != xbar.size()) {
        throw std::invalid_argument("recovery_error: dimension mismatch");
    }
    return (xhat - xbar).norm();
}

GeneratedProblem generate_problem(Eigen::Index n, Eigen::Index m, Eigen::Index K, NoiseSpec noise,
                                  FlipSpec flips, Seed seed)
{
    noise.validate();
    flips.validate();
    GeneratedProblem p;
    p.n = n;
    p.m = m;
    p.K = K;
    p.noise = noise;
    p.flips = flips;
    p.seed = seed;
    p.signal = generate_sparse_signal(n, K, derive(seed, Stream::signal));
    p.U = generate_measurement_system(n, m, derive(seed, Stream::matrix));
    const Vector clean = quantize(p.U, p.signal.x, noise, derive(seed, Stream::noise));
    p.y = flip_signs(clean, flips, derive(seed, Stream::flips));
    return p;
}

}  // namespace bitpin
