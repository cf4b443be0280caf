#pragma once

#include "bitpin/piht.hpp"

#include <vector>

namespace bitpin {

/// Adaptive outlier pursuit around PIHT. Each outer loop runs PIHT with
/// tau = decay^l_out * tau0 on the current sign estimate, warm-started at the
/// previous iterate, then marks the L measurements with the largest pinball
/// loss as flipped and negates them relative to the original signs.
/// tau0 = 0 gives AOP-BIHT.
///
/// The defaults alternate one PIHT step with one detection step (c = 0,
/// alpha = step_scale / m), so tau has decayed to ~0 by the end. Running the
/// full 500-step PIHT per outer loop instead freezes the first detection's
/// mistakes into the signs and gains nothing over plain PIHT.
struct AopConfig {
    Eigen::Index L = 0;
    double tau0 = -0.2;
    double decay = 0.95;
    int outer_max = 500;
    /// Stop once the detected set repeats and the iterate moved by at most
    /// this much (sup norm). Infinity stops on set repetition alone.
    double iterate_tol = 1e-6;
    /// alpha = step_scale / m when inner.alpha is unset.
    double step_scale = 3.0;
    /// Inner solver settings; its params.tau is overwritten per outer loop.
    PihtConfig inner = default_inner();

    static PihtConfig default_inner();

    void validate(Eigen::Index m) const;
    double tau_at(int outer) const;
};

struct AopResult {
    PihtResult piht;
    /// Measurement indices currently treated as flipped, sorted ascending.
    std::vector<Eigen::Index> flipped;
    int outer_iterations = 0;
    bool stabilized = false;
};

/// Indices of the L largest values of L_tau(c - y_i u_i^T x). Ties go to the
/// larger argument c - y_i u_i^T x, then to the lowest index. Sorted ascending.
std::vector<Eigen::Index> detect_flips(const Vector& x, const ProblemData& data, const PinballParams& params,
                                       Eigen::Index L);

AopResult aop_solve(const ProblemData& data, const AopConfig& config);

}  // namespace bitpin
