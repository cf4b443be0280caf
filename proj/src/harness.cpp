#include "bitpin/harness.hpp"
#include "bitpin/problem_io.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bitpin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SolverPoint {
    std::optional<double> tau;
    std::optional<double> c;
    std::optional<double> C;
    std::optional<Eigen::Index> k_est;
};

template <class T>
std::vector<std::optional<T>> axis_values(const std::vector<T>& values)
{
    if (values.empty()) {
        return {std::nullopt};
    }
    return {values.begin(), values.end()};
}

std::vector<GridPoint> data_points(const ExperimentConfig& config)
{
    std::vector<GridPoint> points;
    for (auto m : config.m) {
        for (auto K : config.K) {
            for (auto rf : config.r_f) {
                for (auto rn : config.r_n) {
                    GridPoint p;
                    p.m = m;
                    p.K = K;
                    p.r_f = rf;
                    p.r_n = rn;
                    points.push_back(p);
                }
            }
        }
    }
    return points;
}

std::vector<SolverPoint> solver_points(const ExperimentConfig& config)
{
    std::vector<SolverPoint> points;
    for (auto tau : axis_values(config.tau)) {
        for (auto c : axis_values(config.c)) {
            for (auto C : axis_values(config.C)) {
                for (auto k : axis_values(config.k_est)) {
                    points.push_back({tau, c, C, k});
                }
            }
        }
    }
    return points;
}

GridPoint combine(GridPoint data, const SolverPoint& solver)
{
    data.tau = solver.tau;
    data.c = solver.c;
    data.C = solver.C;
    data.k_est = solver.k_est;
    return data;
}

std::string default_label(const SolverSpec& spec)
{
    return spec.label.empty() ? to_string(spec.kind) : spec.label;
}

SolverSpec make_series(std::string label, SolverKind kind, std::optional<double> tau = std::nullopt)
{
    SolverSpec spec;
    spec.label = std::move(label);
    spec.kind = kind;
    spec.tau = tau;
    return spec;
}

std::vector<double> linspace(double first, double last, int count)
{
    std::vector<double> v;
    for (int k = 0; k < count; ++k) {
        // Round to 12 digits so grid labels print cleanly.
        const double raw = first + (last - first) * k / (count - 1);
        v.push_back(std::round(raw * 1e12) / 1e12);
    }
    return v;
}

std::vector<Eigen::Index> index_range(Eigen::Index first, Eigen::Index last, Eigen::Index step)
{
    std::vector<Eigen::Index> v;
    for (auto x = first; x <= last; x += step) {
        v.push_back(x);
    }
    return v;
}

std::vector<SolverSpec> piht_family()
{
    return {make_series("biht", SolverKind::biht), make_series("piht_tau-0.1", SolverKind::piht, -0.1),
            make_series("piht_tau-0.2", SolverKind::piht, -0.2), make_series("piht_tau-0.4", SolverKind::piht, -0.4)};
}

std::vector<SolverSpec> aop_family()
{
    return {make_series("biht", SolverKind::biht), make_series("piht", SolverKind::piht, -0.2),
            make_series("aop_biht", SolverKind::aop_biht), make_series("aop_piht", SolverKind::aop_piht, -0.2)};
}

std::vector<SolverSpec> table_family()
{
    return {make_series("epsvm_tau-0.4", SolverKind::epsvm, -0.4),
            make_series("epsvm_tau-0.5", SolverKind::epsvm, -0.5),
            make_series("epsvm_tau-0.7", SolverKind::epsvm, -0.7),
            make_series("epsvm_tau-0.9", SolverKind::epsvm, -0.9), make_series("passive", SolverKind::passive)};
}

std::string field(double v)
{
    return format_double(v);
}

template <class T>
std::string field(const std::optional<T>& v)
{
    if (!v) {
        return "";
    }
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*v);
    } else {
        return std::to_string(*v);
    }
}

void write_csv_header(std::ostream& out)
{
    out << "series,solver,m,K,r_f,r_n,tau,c,C,mu,k_est";
}

void write_csv_coordinates(std::ostream& out, const std::string& series, const GridPoint& p, const SolverSettings& s)
{
    out << series << ',' << to_string(s.kind) << ',' << p.m << ',' << p.K << ',' << field(p.r_f) << ','
        << field(p.r_n) << ',' << field(s.tau) << ',' << field(s.c) << ',';
    if (s.uses_mu()) {
        out << field(s.C) << ',' << field(s.mu) << ',';
    } else {
        out << ",,";
    }
    if (s.uses_k()) {
        out << s.k;
    }
}

double axis_value(const AggregateRecord& r, const std::string& axis)
{
    if (axis == "m") return static_cast<double>(r.point.m);
    if (axis == "K") return static_cast<double>(r.point.K);
    if (axis == "r_f") return r.point.r_f;
    if (axis == "r_n") return r.point.r_n;
    if (axis == "tau") return r.settings.tau;
    if (axis == "c") return r.settings.c;
    if (axis == "C") return r.settings.C;
    if (axis == "k_est") return static_cast<double>(r.settings.k);
    throw std::invalid_argument("unknown axis " + axis);
}

void emit_plotdata(const ExperimentResult& result, std::ostream& out)
{
    auto axes = result.config.swept_axes();
    if (axes.empty()) {
        axes.push_back("m");
    }
    const std::string x_axis = axes.back();
    const std::optional<std::string> block_axis =
        axes.size() == 2 ? std::optional<std::string>(axes.front()) : std::nullopt;

    bool first_series = true;
    for (const auto& spec : result.config.series) {
        const auto label = default_label(spec);
        if (!first_series) {
            out << "\n\n";
        }
        first_series = false;
        out << "# series " << label << '\n';
        out << '#' << (block_axis ? " " + *block_axis : std::string()) << ' ' << x_axis
            << " mean_error std_error mean_time_ms n_trials\n";
        std::optional<double> current_block;
        for (const auto& r : result.aggregates) {
            if (r.series != label) {
                continue;
            }
            if (block_axis) {
                const double b = axis_value(r, *block_axis);
                if (current_block && *current_block != b) {
                    out << '\n';
                }
                current_block = b;
                out << field(b) << ' ';
            }
            out << field(axis_value(r, x_axis)) << ' ' << field(r.mean_error) << ' ' << field(r.std_error) << ' '
                << field(r.mean_time_ms) << ' ' << r.n_trials << '\n';
        }
    }
}

template <class T>
void read_axis(const nlohmann::json& doc, const char* key, std::vector<T>& out)
{
    if (!doc.contains(key)) {
        return;
    }
    auto read_one = [](const nlohmann::json& v) -> T {
        if constexpr (std::is_floating_point_v<T>) {
            if (v.is_string()) {
                return static_cast<T>(parse_double(v.get<std::string>()));
            }
        }
        return v.get<T>();
    };
    const auto& v = doc.at(key);
    out.clear();
    if (v.is_array()) {
        for (const auto& e : v) {
            out.push_back(read_one(e));
        }
    } else if (!v.is_null()) {
        out.push_back(read_one(v));
    }
}

template <class T>
void read_optional(const nlohmann::json& doc, const char* key, std::optional<T>& out)
{
    if (doc.contains(key) && !doc.at(key).is_null()) {
        out = doc.at(key).get<T>();
    }
}

SolverSpec series_from_json(const nlohmann::json& doc)
{
    SolverSpec spec;
    spec.kind = solver_kind_from_string(doc.at("solver").get<std::string>());
    spec.label = doc.value("label", std::string(to_string(spec.kind)));
    read_optional(doc, "tau", spec.tau);
    read_optional(doc, "c", spec.c);
    read_optional(doc, "C", spec.C);
    read_optional(doc, "mu", spec.mu);
    read_optional(doc, "k_est", spec.k_est);
    read_optional(doc, "alpha", spec.alpha);
    read_optional(doc, "l_max", spec.l_max);
    read_optional(doc, "L_ratio", spec.L_ratio);
    spec.decay = doc.value("decay", spec.decay);
    read_optional(doc, "outer_max", spec.outer_max);
    return spec;
}

}  // namespace

const char* to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::biht:
        return "biht";
    case SolverKind::piht:
        return "piht";
    case SolverKind::aop_biht:
        return "aop_biht";
    case SolverKind::aop_piht:
        return "aop_piht";
    case SolverKind::passive:
        return "passive";
    case SolverKind::epsvm:
        return "epsvm";
    }
    return "unknown";
}

SolverKind solver_kind_from_string(std::string_view name)
{
    for (auto kind : {SolverKind::biht, SolverKind::piht, SolverKind::aop_biht, SolverKind::aop_piht,
                      SolverKind::passive, SolverKind::epsvm}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

SolverSettings resolve(const SolverSpec& spec, const GridPoint& point, Eigen::Index n)
{
    SolverSettings s;
    s.kind = spec.kind;
    s.alpha = spec.alpha;
    s.decay = spec.decay;
    s.outer_max = spec.outer_max.value_or(AopConfig{}.outer_max);
    s.k = point.k_est.value_or(spec.k_est.value_or(point.K));
    const double L_ratio = spec.L_ratio.value_or(point.r_f);
    s.L = FlipSpec{L_ratio}.count(point.m);

    const double tau = point.tau.value_or(spec.tau.value_or(spec.kind == SolverKind::epsvm ? -0.5 : -0.2));
    const double c = point.c.value_or(spec.c.value_or(1.0));
    switch (spec.kind) {
    case SolverKind::biht:
        s.tau = 0.0;
        s.c = 0.0;
        s.l_max = spec.l_max.value_or(500);
        break;
    case SolverKind::aop_biht:
        s.tau = 0.0;
        s.c = 0.0;
        s.l_max = spec.l_max.value_or(AopConfig::default_inner().l_max);
        break;
    case SolverKind::piht:
        s.tau = tau;
        s.c = c;
        s.l_max = spec.l_max.value_or(500);
        break;
    case SolverKind::aop_piht:
        s.tau = tau;
        s.c = point.c.value_or(spec.c.value_or(AopConfig::default_inner().params.c()));
        s.l_max = spec.l_max.value_or(AopConfig::default_inner().l_max);
        break;
    case SolverKind::passive:
        s.tau = -1.0;
        s.c = c;
        s.l_max = 1;
        break;
    case SolverKind::epsvm:
        s.tau = tau;
        s.c = c;
        s.l_max = spec.l_max.value_or(100);
        break;
    }
    if (s.uses_mu()) {
        s.C = point.C.value_or(spec.C.value_or(EpsvmConfig::default_mu_factor(s.tau)));
        s.mu = spec.mu && !point.C ? *spec.mu : EpsvmConfig::mu_from_factor(s.C, n, point.m);
    }
    return s;
}

SolveOutcome run_solver(const ProblemData& data, const SolverSettings& s)
{
    switch (s.kind) {
    case SolverKind::biht:
    case SolverKind::piht: {
        PihtConfig config;
        config.K = s.k;
        config.alpha = s.alpha;
        config.l_max = s.l_max;
        config.params = PinballParams(s.tau, s.c);
        auto r = piht_solve(data, config);
        return {std::move(r.x), r.status == PihtStatus::ok ? "ok" : "degenerate"};
    }
    case SolverKind::aop_biht:
    case SolverKind::aop_piht: {
        AopConfig config;
        config.L = s.L;
        config.tau0 = s.tau;
        config.decay = s.decay;
        config.outer_max = s.outer_max;
        config.inner.K = s.k;
        config.inner.alpha = s.alpha;
        config.inner.l_max = s.l_max;
        config.inner.params = PinballParams(s.tau, s.c);
        auto r = aop_solve(data, config);
        return {std::move(r.piht.x), r.piht.status == PihtStatus::ok ? "ok" : "degenerate"};
    }
    case SolverKind::passive: {
        auto r = passive_closed_form(data, s.mu, s.c);
        return {std::move(r.x), to_string(r.status)};
    }
    case SolverKind::epsvm: {
        EpsvmConfig config;
        config.params = PinballParams(s.tau, s.c);
        config.mu = s.mu;
        config.l_max = s.l_max;
        auto r = epsvm_solve(data, config);
        return {std::move(r.x), to_string(r.status)};
    }
    }
    throw std::logic_error("unhandled solver kind");
}

void ExperimentConfig::validate() const
{
    if (n < 1) {
        throw std::invalid_argument("experiment n must be positive");
    }
    if (trials < 1) {
        throw std::invalid_argument("experiment trials must be >= 1");
    }
    if (threads < 0) {
        throw std::invalid_argument("experiment threads must be >= 0");
    }
    if (m.empty() || K.empty() || r_f.empty() || r_n.empty()) {
        throw std::invalid_argument("experiment grid axes must be nonempty");
    }
    if (series.empty()) {
        throw std::invalid_argument("experiment needs at least one solver series");
    }
    for (auto v : m) {
        if (v < 1) throw std::invalid_argument("m must be positive");
    }
    for (auto v : K) {
        if (v < 1 || v > n) throw std::invalid_argument("K must satisfy 1 <= K <= n");
    }
    for (auto v : r_f) {
        FlipSpec{v}.validate();
    }
    for (auto v : r_n) {
        NoiseSpec{v}.validate();
    }
    for (auto v : k_est) {
        if (v < 1 || v > n) throw std::invalid_argument("k_est must satisfy 1 <= k_est <= n");
    }
    if (swept_axes().size() > 2) {
        throw std::invalid_argument("at most two grid axes may be swept at once");
    }
    std::vector<std::string> labels;
    for (const auto& s : series) {
        labels.push_back(default_label(s));
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw std::invalid_argument("series labels must be unique");
    }
}

std::vector<std::string> ExperimentConfig::swept_axes() const
{
    std::vector<std::string> axes;
    auto add = [&axes](const char* name, std::size_t count) {
        if (count > 1) {
            axes.emplace_back(name);
        }
    };
    add("m", m.size());
    add("K", K.size());
    add("r_f", r_f.size());
    add("r_n", r_n.size());
    add("tau", tau.size());
    add("c", c.size());
    add("C", C.size());
    add("k_est", k_est.size());
    return axes;
}

const AggregateRecord& ExperimentResult::find(std::string_view series, Eigen::Index m) const
{
    for (const auto& r : aggregates) {
        if (r.series == series && (m < 0 || r.point.m == m)) {
            return r;
        }
    }
    throw std::out_of_range("no aggregate for series '" + std::string(series) + "'");
}

Seed trial_seed(Seed base, const GridPoint& point, int trial)
{
    return derive(base, {static_cast<std::uint64_t>(point.m), static_cast<std::uint64_t>(point.K),
                         std::bit_cast<std::uint64_t>(point.r_f), std::bit_cast<std::uint64_t>(point.r_n),
                         static_cast<std::uint64_t>(trial)});
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto data = data_points(config);
    const auto solver = solver_points(config);
    const std::size_t n_series = config.series.size();
    const std::size_t per_instance = solver.size() * n_series;
    const std::size_t trials = static_cast<std::size_t>(config.trials);

    ExperimentResult result;
    result.config = config;
    result.trials.resize(data.size() * trials * per_instance);

    auto run_item = [&](std::size_t item) {
        const std::size_t d = item / trials;
        const int t = static_cast<int>(item % trials);
        const GridPoint& dp = data[d];
        std::optional<GeneratedProblem> problem;
        std::optional<ProblemData> pdata;
        std::string setup_error;
        try {
            problem = generate_problem(config.n, dp.m, dp.K, NoiseSpec{dp.r_n}, FlipSpec{dp.r_f},
                                       trial_seed(config.base_seed, dp, t));
            pdata.emplace(problem->data());
        } catch (const std::exception& e) {
            setup_error = e.what();
        }
        for (std::size_t sp = 0; sp < solver.size(); ++sp) {
            for (std::size_t k = 0; k < n_series; ++k) {
                const auto& spec = config.series[k];
                TrialRecord& rec = result.trials[item * per_instance + sp * n_series + k];
                rec.series = default_label(spec);
                rec.point = combine(dp, solver[sp]);
                rec.trial = t;
                try {
                    if (!pdata) {
                        throw std::runtime_error(setup_error);
                    }
                    rec.settings = resolve(spec, rec.point, config.n);
                    const auto start = std::chrono::steady_clock::now();
                    auto outcome = run_solver(*pdata, rec.settings);
                    const auto stop = std::chrono::steady_clock::now();
                    if (config.record_time) {
                        rec.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
                    }
                    rec.error = recovery_error(outcome.x, problem->signal.x);
                    rec.status = std::move(outcome.status);
                } catch (const std::exception& e) {
                    rec.failed = true;
                    rec.error = std::numeric_limits<double>::quiet_NaN();
                    rec.status = std::string("error: ") + e.what();
                }
            }
        }
    };

    const std::size_t items = data.size() * trials;
    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                           : static_cast<unsigned>(config.threads);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, items));
    if (workers <= 1) {
        for (std::size_t item = 0; item < items; ++item) {
            run_item(item);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t item = next++; item < items; item = next++) {
                    run_item(item);
                }
            });
        }
    }

    // Aggregate per (series, grid point) in series-major order, trials in index order.
    for (std::size_t k = 0; k < n_series; ++k) {
        for (std::size_t d = 0; d < data.size(); ++d) {
            for (std::size_t sp = 0; sp < solver.size(); ++sp) {
                AggregateRecord agg;
                agg.series = default_label(config.series[k]);
                agg.point = combine(data[d], solver[sp]);
                agg.settings = resolve(config.series[k], agg.point, config.n);
                double sum = 0.0;
                double time_sum = 0.0;
                std::vector<double> errors;
                for (std::size_t t = 0; t < trials; ++t) {
                    const auto& rec = result.trials[(d * trials + t) * per_instance + sp * n_series + k];
                    if (rec.failed) {
                        ++agg.n_failed;
                        continue;
                    }
                    errors.push_back(rec.error);
                    sum += rec.error;
                    time_sum += rec.time_ms;
                }
                agg.n_trials = static_cast<int>(errors.size());
                if (!errors.empty()) {
                    const double count = static_cast<double>(errors.size());
                    agg.mean_error = sum / count;
                    agg.mean_time_ms = time_sum / count;
                    double ss = 0.0;
                    for (double e : errors) {
                        ss += (e - agg.mean_error) * (e - agg.mean_error);
                    }
                    agg.std_error = errors.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
                    agg.min_error = *std::min_element(errors.begin(), errors.end());
                    agg.max_error = *std::max_element(errors.begin(), errors.end());
                } else {
                    agg.mean_error = agg.std_error = agg.min_error = agg.max_error =
                        std::numeric_limits<double>::quiet_NaN();
                }
                result.aggregates.push_back(std::move(agg));
            }
        }
    }
    return result;
}

OutputFormat output_format_from_string(std::string_view name)
{
    if (name == "csv") return OutputFormat::csv;
    if (name == "trials" || name == "trials_csv") return OutputFormat::trials_csv;
    if (name == "plotdata") return OutputFormat::plotdata;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

void emit_results(const ExperimentResult& result, std::ostream& out, OutputFormat format)
{
    switch (format) {
    case OutputFormat::csv:
        if (result.aggregates.empty()) {
            throw std::invalid_argument("emit_results: empty aggregate table");
        }
        write_csv_header(out);
        out << ",mean_error,std_error,mean_time_ms,n_trials\n";
        for (const auto& r : result.aggregates) {
            write_csv_coordinates(out, r.series, r.point, r.settings);
            out << ',' << field(r.mean_error) << ',' << field(r.std_error) << ',' << field(r.mean_time_ms) << ','
                << r.n_trials << '\n';
        }
        break;
    case OutputFormat::trials_csv:
        if (result.trials.empty()) {
            throw std::invalid_argument("emit_results: empty trial table");
        }
        write_csv_header(out);
        out << ",trial,error,time_ms,status\n";
        for (const auto& r : result.trials) {
            write_csv_coordinates(out, r.series, r.point, r.settings);
            out << ',' << r.trial << ',' << field(r.error) << ',' << field(r.time_ms) << ',' << r.status << '\n';
        }
        break;
    case OutputFormat::plotdata:
        if (result.aggregates.empty()) {
            throw std::invalid_argument("emit_results: empty aggregate table");
        }
        emit_plotdata(result, out);
        break;
    }
}

void emit_results(const ExperimentResult& result, const std::filesystem::path& path, OutputFormat format)
{
    if (path.empty()) {
        throw std::runtime_error("emit_results: output path is empty");
    }
    std::ostringstream buffer;
    emit_results(result, buffer, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << buffer.str();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

std::vector<std::string> preset_names()
{
    return {"exp1-tau",       "exp1-c",     "exp2-aop",  "exp3-noise", "exp4-epsvm", "contour",
            "fig-piht-m",     "fig-piht-noise", "fig-piht-k", "table1", "table2"};
}

ExperimentConfig preset(std::string_view name)
{
    ExperimentConfig e;
    e.name = std::string(name);
    e.n = 1000;
    e.trials = 100;
    e.r_f = {0.1};
    e.r_n = {kInf};

    if (name == "exp1-tau") {
        e.m = {500};
        e.K = {10};
        e.tau = linspace(-1.0, 0.0, 11);
        auto s = make_series("piht_c0", SolverKind::piht);
        s.c = 0.0;
        e.series = {s};
    } else if (name == "exp1-c") {
        e.m = {500};
        e.K = {10};
        e.c = linspace(0.0, 2.0, 11);
        e.series = {make_series("piht_tau-0.2", SolverKind::piht, -0.2)};
    } else if (name == "exp2-aop") {
        e.m = index_range(200, 1500, 100);
        e.K = {15};
        e.series = aop_family();
    } else if (name == "exp3-noise") {
        e.m = {800};
        e.K = {15};
        e.r_f = {0.0, 0.1};
        e.r_n = {1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
        e.series = aop_family();
    } else if (name == "exp4-epsvm") {
        e.m = {300};
        e.K = {15};
        e.tau = linspace(-1.0, 0.0, 11);
        auto s = make_series("epsvm", SolverKind::epsvm);
        s.C = 1.0;
        e.series = {s};
    } else if (name == "contour") {
        e.m = {300};
        e.K = {15};
        e.tau = linspace(-1.0, -0.1, 10);
        e.C = linspace(0.2, 1.6, 8);
        e.series = {make_series("epsvm", SolverKind::epsvm)};
    } else if (name == "fig-piht-m") {
        e.m = {100, 250, 500, 1000, 1500, 2000, 3000, 4000, 5000};
        e.K = {20};
        e.series = piht_family();
    } else if (name == "fig-piht-noise") {
        e.m = {800};
        e.K = {20};
        e.r_n = {1, 2, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
        e.series = piht_family();
    } else if (name == "fig-piht-k") {
        e.m = {800};
        e.K = {20};
        e.k_est = index_range(5, 40, 5);
        e.series = piht_family();
    } else if (name == "table1" || name == "table2") {
        e.m = {200, 350, 500, 650, 800, 1100, 1400, 1700, 2000};
        e.K = {20};
        if (name == "table2") {
            e.r_n = {10};
        }
        e.series = table_family();
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return e;
}

ExperimentConfig config_from_json(const nlohmann::json& doc)
{
    ExperimentConfig e = doc.contains("preset") ? preset(doc.at("preset").get<std::string>()) : ExperimentConfig{};
    e.name = doc.value("name", e.name);
    e.n = doc.value("n", e.n);
    read_axis(doc, "m", e.m);
    read_axis(doc, "K", e.K);
    read_axis(doc, "r_f", e.r_f);
    read_axis(doc, "r_n", e.r_n);
    read_axis(doc, "tau", e.tau);
    read_axis(doc, "c", e.c);
    read_axis(doc, "C", e.C);
    read_axis(doc, "k_est", e.k_est);
    e.trials = doc.value("trials", e.trials);
    if (doc.contains("seed")) {
        e.base_seed.value = doc.at("seed").get<std::uint64_t>();
    }
    e.threads = doc.value("threads", e.threads);
    e.record_time = doc.value("record_time", e.record_time);
    if (doc.contains("series")) {
        e.series.clear();
        for (const auto& s : doc.at("series")) {
            e.series.push_back(series_from_json(s));
        }
    }
    e.validate();
    return e;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config '" + path.string() + "'");
    }
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config '" + path.string() + "': " + e.what());
    }
}

}  // namespace bitpin
