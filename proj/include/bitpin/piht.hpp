#pragma once

#include "bitpin/loss.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace bitpin {

struct PihtConfig {
    Eigen::Index K = 1;
    /// Step size; 1/m when unset.
    std::optional<double> alpha;
    int l_max = 500;
    PinballParams params{-0.2, 1.0};
    /// Initial iterate; the normalized back-projection U y / ||U y|| when unset.
    std::optional<Vector> x0;

    void validate(Eigen::Index n) const;
    double step(Eigen::Index m) const { return alpha.value_or(1.0 / static_cast<double>(m)); }

    /// The binary IHT special case (tau = 0, c = 0).
    static PihtConfig biht(Eigen::Index K, int l_max = 500);
};

enum class PihtStatus { ok, degenerate };

struct PihtResult {
    /// Unit-norm final iterate, or zero when status is degenerate.
    Vector x;
    /// Objective at the normalized iterate after each update.
    std::vector<double> objective_trace;
    int iterations = 0;
    PihtStatus status = PihtStatus::ok;
};

/// Called with (l, x^l) after each thresholding step, l = 1..l_max.
using IterateObserver = std::function<void(int, const Vector&)>;

/// Best K-term approximation: keeps the K largest magnitudes, lowest index
/// first among equal magnitudes.
Vector hard_threshold(const Vector& a, Eigen::Index K);

/// U y / ||U y||_2, or zero if the back-projection vanishes.
Vector back_projection(const ProblemData& data);

/// Pinball iterative hard thresholding. Runs exactly l_max iterations of
///   a = x - alpha * U g(x),  x = hard_threshold(a, K)
/// and returns the last iterate normalized to the unit sphere.
PihtResult piht_solve(const ProblemData& data, const PihtConfig& config,
                      const IterateObserver& observer = {});

}  // namespace bitpin
