#include "support.hpp"

#include "bitpin/sensing.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

using namespace bitpin;
using namespace test_support;

TEST_SUITE("sensing") {

TEST_CASE("splitmix64 and the engine match their published reference outputs")
{
    // first output of SplitMix64 seeded with 0
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    // 10000th output of a default-seeded 64-bit Mersenne Twister
    Engine e = make_engine(Seed{5489});
    e.discard(9999);
    CHECK(e() == 9981545732273789042ULL);

    static_assert(derive(Seed{1}, Stream::signal) != derive(Seed{1}, Stream::matrix));
    static_assert(derive(Seed{1}, {1, 2}) != derive(Seed{1}, {2, 1}));
}

TEST_CASE("generate_sparse_signal")
{
    const auto dense = generate_sparse_signal(5, 5, Seed{3});
    CHECK((dense.x.array() != 0.0).count() == 5);
    CHECK(dense.x.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const auto a = generate_sparse_signal(1000, 10, Seed{42});
    const auto b = generate_sparse_signal(1000, 10, Seed{42});
    CHECK(a.x == b.x);
    CHECK(a.support == b.support);
    CHECK(std::abs(a.x.norm() - 1.0) <= 1e-12);
    CHECK((a.x.array() == 0.0).count() == 990);
    CHECK(std::is_sorted(a.support.begin(), a.support.end()));
    for (auto j : a.support) {
        CHECK(a.x[j] != 0.0);
    }
    CHECK(generate_sparse_signal(1000, 10, Seed{43}).x != a.x);

    CHECK_THROWS_AS(generate_sparse_signal(5, 0, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_sparse_signal(5, 6, Seed{1}), std::invalid_argument);
}

TEST_CASE("support is uniform over coordinates")
{
    // Every coordinate should be picked with probability K/n.
    const int n = 20, K = 4, reps = 20000;
    std::vector<int> hits(n, 0);
    for (int r = 0; r < reps; ++r) {
        for (auto j : generate_sparse_signal(n, K, Seed{static_cast<std::uint64_t>(r)}).support) {
            ++hits[static_cast<std::size_t>(j)];
        }
    }
    const double p = double(K) / n;
    const double sd = std::sqrt(reps * p * (1 - p));
    for (int h : hits) {
        CHECK(std::abs(h - reps * p) < 5 * sd);
    }
}

TEST_CASE("generate_measurement_system")
{
    const Matrix a = generate_measurement_system(30, 20, Seed{5});
    CHECK(a == generate_measurement_system(30, 20, Seed{5}));
    CHECK(a != generate_measurement_system(30, 20, Seed{6}));

    const Matrix one = generate_measurement_system(1, 1, Seed{9});
    CHECK(std::isfinite(one(0, 0)));

    CHECK_THROWS_AS(generate_measurement_system(0, 3, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_measurement_system(3, 0, Seed{1}), std::invalid_argument);
}

TEST_CASE("column norms follow the chi distribution mean")
{
    const int n = 1000, m = 500;
    const Matrix U = generate_measurement_system(n, m, Seed{77});
    const double sample_mean = U.colwise().norm().mean();
    // E||u|| = sqrt(2) Gamma((n+1)/2) / Gamma(n/2)
    const double chi_mean = std::sqrt(2.0) * std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0));
    CHECK(chi_mean == doctest::Approx(std::sqrt(1000.0)).epsilon(0.001));
    CHECK(std::abs(sample_mean - chi_mean) <= 0.05 * chi_mean);
    // var ||u|| = n - chi_mean^2, so the sample mean sits within a few standard errors
    const double se = std::sqrt((n - chi_mean * chi_mean) / m);
    CHECK(std::abs(sample_mean - chi_mean) <= 4 * se);

    // entry moments
    const double mean = U.mean();
    const double var = (U.array() - mean).square().mean();
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n) * m));
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("quantize examples")
{
    Matrix U(3, 2);
    U << 2, 0, 0.5, 0, -1, 0;
    const Vector e1{{1.0, 0.0, 0.0}};
    const Vector y = quantize(U, e1, NoiseSpec{}, Seed{1});
    CHECK(y[0] == 1.0);
    // exactly zero analog measurement quantizes to +1
    CHECK(y[1] == 1.0);

    CHECK_THROWS_AS(quantize(U, Vector::Ones(2), NoiseSpec{}, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(quantize(U, e1, NoiseSpec{0.0}, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(quantize(U, e1, NoiseSpec{-3.0}, Seed{1}), std::invalid_argument);
}

TEST_CASE("noiseless quantization is consistent with the signal")
{
    const auto sig = generate_sparse_signal(100, 7, Seed{4});
    const Matrix U = generate_measurement_system(100, 300, Seed{5});
    const Vector y = quantize(U, sig.x, NoiseSpec{}, Seed{6});
    const Vector a = U.transpose() * sig.x;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        CHECK(y[i] * a[i] >= 0.0);
        CHECK(y[i] == sign_of(a[i]));
    }
}

TEST_CASE("noise level matches the SNR definition")
{
    // With a ~ N(0, P) and e ~ N(0, P / snr), sgn(a + e) != sgn(a) with
    // probability atan(1 / sqrt(snr)) / pi.
    const int m = 100000;
    const double snr = 10.0;
    const Vector x = generate_sparse_signal(4, 4, Seed{10}).x;
    const Matrix U = generate_measurement_system(4, m, Seed{11});
    const Vector clean = quantize(U, x, NoiseSpec{}, Seed{12});
    const Vector noisy = quantize(U, x, NoiseSpec{snr}, Seed{12});
    const double rate = (clean.array() != noisy.array()).cast<double>().mean();
    const double expected = std::atan(1.0 / std::sqrt(snr)) / std::numbers::pi;
    CHECK(expected == doctest::Approx(0.09749).epsilon(1e-3));
    CHECK(rate == doctest::Approx(expected).epsilon(0.05));

    CHECK(noisy == quantize(U, x, NoiseSpec{snr}, Seed{12}));
    CHECK(noisy != quantize(U, x, NoiseSpec{snr}, Seed{13}));
}

TEST_CASE("flip_signs")
{
    Engine rng = make_engine(Seed{20});
    const Vector y = random_signs(500, rng);
    CHECK(flip_signs(y, FlipSpec{0.0}, Seed{1}) == y);
    CHECK(flip_signs(y, FlipSpec{1.0}, Seed{1}) == -y);

    const Vector f = flip_signs(y, FlipSpec{0.1}, Seed{2});
    CHECK((f.array() != y.array()).count() == 50);
    CHECK(flip_signs(f, FlipSpec{0.1}, Seed{2}) == y);
    CHECK(f == flip_signs(y, FlipSpec{0.1}, Seed{2}));

    CHECK(FlipSpec{0.25}.count(10) == 3);  // 2.5 rounds up
    CHECK(FlipSpec{0.1}.count(800) == 80);
    CHECK(FlipSpec{0.0}.count(7) == 0);
    CHECK_THROWS_AS(FlipSpec{1.5}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(FlipSpec{-0.1}.validate(), std::invalid_argument);
}

TEST_CASE("sample_without_replacement draws distinct indices")
{
    Engine rng = make_engine(Seed{21});
    for (int k = 0; k < 100; ++k) {
        const auto n = uniform_int(1, 50, rng);
        const auto count = uniform_int(0, static_cast<int>(n), rng);
        const auto s = sample_without_replacement(n, count, rng);
        CHECK(static_cast<int>(s.size()) == count);
        std::set<Eigen::Index> uniq(s.begin(), s.end());
        CHECK(uniq.size() == s.size());
        for (auto i : s) {
            CHECK(i >= 0);
            CHECK(i < n);
        }
    }
}

TEST_CASE("recovery_error")
{
    const Vector a{{0.6, 0.8}};
    CHECK(recovery_error(a, a) == 0.0);
    CHECK(recovery_error(-a, a) == doctest::Approx(2.0));
    CHECK(recovery_error(Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(recovery_error(Vector::Ones(3), a), std::invalid_argument);
}

TEST_CASE("generate_problem draws each artifact from its own stream")
{
    const Seed seed{99};
    const auto p = generate_problem(60, 40, 5, NoiseSpec{20.0}, FlipSpec{0.1}, seed);
    CHECK(p.signal.x == generate_sparse_signal(60, 5, derive(seed, Stream::signal)).x);
    CHECK(p.U == generate_measurement_system(60, 40, derive(seed, Stream::matrix)));
    const Vector clean = quantize(p.U, p.signal.x, NoiseSpec{20.0}, derive(seed, Stream::noise));
    CHECK(p.y == flip_signs(clean, FlipSpec{0.1}, derive(seed, Stream::flips)));

    const auto q = generate_problem(60, 40, 5, NoiseSpec{20.0}, FlipSpec{0.1}, seed);
    CHECK(q.U == p.U);
    CHECK(q.y == p.y);
    CHECK(p.data().m() == 40);
}

}  // TEST_SUITE
