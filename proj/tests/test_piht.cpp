#include "support.hpp"

#include "bitpin/piht.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace bitpin;
using namespace test_support;

namespace {

/// Binary IHT written directly from its update rule: a = x + alpha U (y - sgn(U^T x)) / 2.
std::vector<Vector> biht_reference(const ProblemData& d, Eigen::Index K, double alpha, int iters, Vector x)
{
    std::vector<Vector> out;
    for (int l = 0; l < iters; ++l) {
        Vector r(d.m());
        for (Eigen::Index i = 0; i < d.m(); ++i) {
            const double a = d.U().col(i).dot(x);
            r[i] = (d.y()[i] - (a > 0 ? 1.0 : -1.0)) / 2.0;
        }
        const Vector a = x + alpha * (d.U() * r);
        x = exhaustive_threshold(a, static_cast<int>(K));
        out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_SUITE("piht") {

TEST_CASE("hard_threshold examples")
{
    CHECK(hard_threshold(Vector{{3.0, -1.0, 2.0}}, 2) == Vector{{3.0, 0.0, 2.0}});
    CHECK(hard_threshold(Vector{{1.0, -1.0, 0.0}}, 1) == Vector{{1.0, 0.0, 0.0}});
    CHECK(hard_threshold(Vector{{-1.0, 1.0, 1.0}}, 2) == Vector{{-1.0, 1.0, 0.0}});
    CHECK(hard_threshold(Vector{{0.0, 0.0}}, 1) == Vector{{0.0, 0.0}});
    CHECK_THROWS_AS(hard_threshold(Vector::Ones(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(hard_threshold(Vector::Ones(3), 4), std::invalid_argument);
}

TEST_CASE("hard_threshold matches exhaustive support search for n <= 10")
{
    Engine rng = make_engine(Seed{31});
    int cases = 0;
    for (int n = 1; n <= 10; ++n) {
        for (int K = 1; K <= n; ++K) {
            for (int rep = 0; rep < 20; ++rep, ++cases) {
                Vector a = gaussian_vector(n, rng);
                if (rep % 2 == 1) {
                    // integer-valued entries force magnitude ties
                    a = (a * 1.5).array().round();
                }
                const Vector z = hard_threshold(a, K);
                CHECK(z == exhaustive_threshold(a, K));
                CHECK(hard_threshold(z, K) == z);
            }
        }
    }
    CHECK(cases == 1100);
}

TEST_CASE("back_projection")
{
    Engine rng = make_engine(Seed{32});
    const ProblemData d = gaussian_problem(8, 20, rng);
    const Vector bp = back_projection(d);
    CHECK(bp.norm() == doctest::Approx(1.0));
    CHECK(bp.isApprox((d.U() * d.y()).normalized()));

    Matrix U(1, 2);
    U << 1.0, 1.0;
    CHECK(back_projection(ProblemData(U, Vector{{1.0, -1.0}})).norm() == 0.0);
}

TEST_CASE("config validation")
{
    Engine rng = make_engine(Seed{33});
    const ProblemData d = gaussian_problem(5, 10, rng);
    PihtConfig c;
    c.K = 2;
    c.l_max = 0;
    CHECK_THROWS_AS(piht_solve(d, c), std::invalid_argument);
    c.l_max = 5;
    c.K = 6;
    CHECK_THROWS_AS(piht_solve(d, c), std::invalid_argument);
    c.K = 0;
    CHECK_THROWS_AS(piht_solve(d, c), std::invalid_argument);
    c.K = 2;
    c.alpha = 0.0;
    CHECK_THROWS_AS(piht_solve(d, c), std::invalid_argument);
    c.alpha.reset();
    c.x0 = Vector::Ones(4);
    CHECK_THROWS_AS(piht_solve(d, c), std::invalid_argument);
    c.x0.reset();
    CHECK_NOTHROW(piht_solve(d, c));
    CHECK(c.step(10) == doctest::Approx(0.1));
}

TEST_CASE("iterates stay K-sparse and the output is a unit vector")
{
    Engine rng = make_engine(Seed{34});
    for (int rep = 0; rep < 10; ++rep) {
        const ProblemData d = gaussian_problem(30, 40, rng);
        PihtConfig c;
        c.K = uniform_int(1, 6, rng);
        c.l_max = 50;
        c.params = PinballParams(uniform(-1.0, 0.0, rng), uniform(0.0, 1.5, rng));
        int seen = 0;
        const auto r = piht_solve(d, c, [&](int l, const Vector& x) {
            CHECK(l == ++seen);
            CHECK((x.array() != 0.0).count() <= c.K);
        });
        CHECK(seen == 50);
        CHECK(r.iterations == 50);
        CHECK(r.objective_trace.size() == 50);
        CHECK(r.status == PihtStatus::ok);
        CHECK(std::abs(r.x.norm() - 1.0) <= 1e-12);
        CHECK((r.x.array() != 0.0).count() <= c.K);
        CHECK(r.objective_trace.back() == doctest::Approx(piht_objective(r.x, d, c.params)));
    }
}

TEST_CASE("single iteration from the back-projection")
{
    Engine rng = make_engine(Seed{35});
    const ProblemData d = gaussian_problem(20, 25, rng);
    PihtConfig c;
    c.K = 3;
    c.l_max = 1;
    const auto r = piht_solve(d, c);
    CHECK((r.x.array() != 0.0).count() <= 3);

    const Vector x0 = back_projection(d);
    const Vector a = x0 - c.step(d.m()) * piht_subgradient(x0, d, c.params);
    CHECK(r.x.isApprox(hard_threshold(a, 3).normalized(), 1e-14));
}

TEST_CASE("BIHT special case matches a direct implementation")
{
    for (int rep = 0; rep < 5; ++rep) {
        const auto p = generate_problem(10, 30, 3, NoiseSpec{}, FlipSpec{0.1},
                                        Seed{static_cast<std::uint64_t>(rep)});
        const ProblemData d = p.data();
        auto c = PihtConfig::biht(3, 40);
        CHECK(c.params.tau() == 0.0);
        CHECK(c.params.c() == 0.0);
        c.alpha = 0.05;
        std::vector<Vector> iterates;
        piht_solve(d, c, [&](int, const Vector& x) { iterates.push_back(x); });
        const auto ref = biht_reference(d, 3, 0.05, 40, back_projection(d));
        REQUIRE(iterates.size() == ref.size());
        for (std::size_t l = 0; l < ref.size(); ++l) {
            CHECK((iterates[l] - ref[l]).lpNorm<Eigen::Infinity>() <= 1e-12 * (1 + ref[l].norm()));
        }
    }
}

TEST_CASE("BIHT recovers a consistent tiny instance")
{
    Engine rng = make_engine(Seed{37});
    const int m = 20;
    Matrix U(3, m);
    Vector y(m);
    for (int i = 0; i < m; ++i) {
        const double s = uniform_int(0, 1, rng) ? 1.0 : -1.0;
        U(0, i) = s;
        U(1, i) = 0.3 * gaussian_vector(1, rng)[0];
        U(2, i) = 0.3 * gaussian_vector(1, rng)[0];
        y[i] = s;
    }
    const ProblemData d(U, y);
    const Vector e1{{1.0, 0.0, 0.0}};
    CHECK(piht_objective(e1, d, PinballParams(0.0, 0.0)) == 0.0);

    const auto r = piht_solve(d, PihtConfig::biht(1, 500));
    CHECK(recovery_error(r.x, e1) < 1e-2);
    for (double f : r.objective_trace) {
        CHECK(f >= 0.0);
    }
    const Vector margins = (U.transpose() * r.x).cwiseProduct(y);
    CHECK(margins.minCoeff() >= 0.0);
}

TEST_CASE("a vanishing iterate is reported as degenerate")
{
    // U y = 0 and every margin is 0 <= c, so every step is zero.
    Matrix U(1, 2);
    U << 1.0, 1.0;
    const ProblemData d(U, Vector{{1.0, -1.0}});
    PihtConfig c;
    c.K = 1;
    c.l_max = 5;
    c.params = PinballParams(0.0, 0.0);
    const auto r = piht_solve(d, c);
    CHECK(r.status == PihtStatus::degenerate);
    CHECK(r.x.size() == 1);
    CHECK(r.x[0] == 0.0);
    CHECK(r.x.allFinite());
}

}  // TEST_SUITE
