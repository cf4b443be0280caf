#pragma once

#include "bitpin/aop.hpp"
#include "bitpin/epsvm.hpp"
#include "bitpin/piht.hpp"
#include "bitpin/sensing.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bitpin {

enum class SolverKind { biht, piht, aop_biht, aop_piht, passive, epsvm };

const char* to_string(SolverKind kind);
SolverKind solver_kind_from_string(std::string_view name);

/// One curve of an experiment. Unset fields take solver-specific defaults:
/// PIHT tau = -0.2, c = 1; ep-SVM tau = -0.5, c = 1, C from the tau table;
/// passive C = 1; BIHT variants tau = c = 0; K estimate = true K;
/// AOP flip budget = round(r_f m); AOP runs one PIHT step per outer loop
/// (c = 0, alpha = 3/m, outer_max = 500) unless overridden.
struct SolverSpec {
    std::string label;
    SolverKind kind = SolverKind::piht;
    std::optional<double> tau;
    std::optional<double> c;
    /// mu = C sqrt(log n / m)
    std::optional<double> C;
    /// Absolute mu; takes precedence over C.
    std::optional<double> mu;
    std::optional<Eigen::Index> k_est;
    std::optional<double> alpha;
    std::optional<int> l_max;
    std::optional<double> L_ratio;
    double decay = 0.95;
    std::optional<int> outer_max;
};

/// Fully resolved solver parameters for one problem instance.
struct SolverSettings {
    SolverKind kind = SolverKind::piht;
    double tau = 0.0;
    double c = 0.0;
    double C = 0.0;   // ep-SVM / passive only
    double mu = 0.0;  // ep-SVM / passive only
    Eigen::Index k = 0;
    Eigen::Index L = 0;
    std::optional<double> alpha;
    int l_max = 0;
    double decay = 0.95;
    int outer_max = 500;

    bool uses_mu() const { return kind == SolverKind::passive || kind == SolverKind::epsvm; }
    bool uses_k() const { return !uses_mu(); }
};

struct SolveOutcome {
    Vector x;
    std::string status;
};

SolveOutcome run_solver(const ProblemData& data, const SolverSettings& settings);

/// Values of every grid axis at one point. Solver-parameter axes are unset
/// when the experiment does not sweep them.
struct GridPoint {
    Eigen::Index m = 0;
    Eigen::Index K = 0;
    double r_f = 0.0;
    double r_n = 0.0;
    std::optional<double> tau;
    std::optional<double> c;
    std::optional<double> C;
    std::optional<Eigen::Index> k_est;
};

SolverSettings resolve(const SolverSpec& spec, const GridPoint& point, Eigen::Index n);

struct ExperimentConfig {
    std::string name = "custom";
    Eigen::Index n = 1000;
    std::vector<Eigen::Index> m{500};
    std::vector<Eigen::Index> K{20};
    std::vector<double> r_f{0.1};
    std::vector<double> r_n{std::numeric_limits<double>::infinity()};
    // Solver-parameter axes; empty means each series uses its own value.
    std::vector<double> tau;
    std::vector<double> c;
    std::vector<double> C;
    std::vector<Eigen::Index> k_est;

    int trials = 100;
    Seed base_seed{1};
    /// Worker threads; 0 means one per hardware thread.
    int threads = 1;
    /// When false, wall times are recorded as 0 so outputs are bit-reproducible.
    bool record_time = true;
    std::vector<SolverSpec> series;

    void validate() const;
    /// Names of axes with more than one value, in column order.
    std::vector<std::string> swept_axes() const;
};

struct TrialRecord {
    std::string series;
    GridPoint point;
    SolverSettings settings;
    int trial = 0;
    double error = 0.0;
    double time_ms = 0.0;
    std::string status;
    bool failed = false;
};

struct AggregateRecord {
    std::string series;
    GridPoint point;
    SolverSettings settings;
    double mean_error = 0.0;
    double std_error = 0.0;
    double min_error = 0.0;
    double max_error = 0.0;
    double mean_time_ms = 0.0;
    int n_trials = 0;
    int n_failed = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    std::vector<AggregateRecord> aggregates;

    /// Aggregate for `series` at the first grid point matching `match`.
    const AggregateRecord& find(std::string_view series, Eigen::Index m = -1) const;
};

/// Seed of trial t at a data point; independent of execution order and of
/// the solver axes, so every solver sees the same instances.
Seed trial_seed(Seed base, const GridPoint& point, int trial);

ExperimentResult run_experiment(const ExperimentConfig& config);

enum class OutputFormat { csv, trials_csv, plotdata };

OutputFormat output_format_from_string(std::string_view name);

void emit_results(const ExperimentResult& result, std::ostream& out, OutputFormat format);
void emit_results(const ExperimentResult& result, const std::filesystem::path& path, OutputFormat format);

std::vector<std::string> preset_names();
ExperimentConfig preset(std::string_view name);

/// Reads a JSON experiment description. A "preset" key selects the starting
/// point; every other key overrides it.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace bitpin
