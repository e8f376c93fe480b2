#include "xxrelay/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "xxrelay/csv.hpp"
#include "xxrelay/errors.hpp"
#include "xxrelay/pair.hpp"
#include "xxrelay/parallel.hpp"
#include "xxrelay/relay.hpp"
#include "xxrelay/search.hpp"
#include "xxrelay/statistics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace xxrelay {

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (max < min) throw ConfigError("grid max must not be below min");
    const int count = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = min + k * step;
    return out;
}

namespace {

const std::set<std::string>& mode_names() {
    static const std::set<std::string> names = {"optimal-time", "field",    "relay",
                                                "clusters",     "critical", "lifetime",
                                                "boundary",     "crossing", "reproduce-figure"};
    return names;
}

const std::set<std::string>& figure_names() {
    static const std::set<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5",
                                                "fig6", "fig7", "fig8", "fig9"};
    return names;
}

std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw ConfigError("'" + (path.empty() ? std::string("(root)") : path) +
                          "' must be a JSON object");
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    std::string unknown;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) unknown += " " + join_path(path, it.key());
    if (!unknown.empty()) throw ConfigError("unknown config keys:" + unknown);
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError("'" + join_path(path, key) + "' must be a number");
    return v.get<double>();
}

int get_integer(const json& j, const std::string& path, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError("'" + join_path(path, key) + "' must be an integer");
    return v.get<int>();
}

bool get_boolean(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError("'" + join_path(path, key) + "' must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError("'" + join_path(path, key) + "' must be a string");
    return v.get<std::string>();
}

void parse_grid(const json& parent, const std::string& path, const char* key, GridSpec& grid) {
    if (!parent.contains(key)) return;
    const json& g = parent.at(key);
    const std::string p = join_path(path, key);
    expect_object(g, p);
    expect_keys(g, p, {"min", "max", "step"});
    grid.min = get_number(g, p, "min", grid.min);
    grid.max = get_number(g, p, "max", grid.max);
    grid.step = get_number(g, p, "step", grid.step);
}

void check(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void validate(const RunConfig& cfg) {
    check(mode_names().count(cfg.mode) > 0, "unrecognized mode '" + cfg.mode + "'");
    check(cfg.chain.N >= 2, "chain.N must be at least 2");
    check(cfg.chain.D > 0.0, "chain.D must be positive");
    check(cfg.chain.T_reg >= 0.0, "chain.T_reg must be nonnegative");
    check(cfg.lambda >= 0.0 && cfg.lambda <= 1.0, "lambda must lie in [0, 1]");
    check(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "alpha must lie in [0, 1]");
    for (const auto* g : {&cfg.lambda_grid, &cfg.alpha_grid}) {
        const std::string name = g == &cfg.lambda_grid ? "grids.lambda" : "grids.alpha";
        check(g->step > 0.0, name + ".step must be positive");
        check(g->min <= g->max, name + ".min must not exceed max");
        check(g->min >= 0.0 && g->max <= 1.0, name + " must lie within [0, 1]");
    }
    check(cfg.time.horizon > 0.0, "grids.time.horizon must be positive");
    check(cfg.time.dt > 0.0, "grids.time.dt must be positive");
    check(cfg.epsilon_C > 0.0 && cfg.epsilon_C < 1.0, "epsilon_C must lie in (0, 1)");
    check(cfg.nodes >= 1, "nodes must be at least 1");
    check(cfg.threads >= 1, "threads must be at least 1");
    check(cfg.threshold > 0.0, "threshold must be positive");
    check(!cfg.output_dir.empty(), "output_dir must not be empty");
    for (size_t k = 0; k < cfg.clusters.size(); ++k) {
        const auto& sel = cfg.clusters[k];
        const std::string path = "clusters[" + std::to_string(k) + "]";
        check(sel.M >= 2 && sel.M <= cfg.chain.N, path + ".M must satisfy 2 <= M <= N");
        check(sel.i == 0 || (sel.i >= 1 && sel.i <= cfg.chain.N - sel.M + 1),
              path + ".i must satisfy 1 <= i <= N-M+1 (or 0 for every position)");
    }
    if (cfg.mode == "reproduce-figure") {
        check(!cfg.figure.empty(), "mode reproduce-figure requires a 'figure' id (fig1..fig9)");
        check(figure_names().count(cfg.figure) > 0, "unrecognized figure '" + cfg.figure + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    return parse_config(text, std::string());
}

RunConfig parse_config(const std::string& text, const std::string& mode_override) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    expect_object(doc, "");
    if (doc.contains("tool") && doc.contains("config")) {
        expect_object(doc.at("config"), "config");
        doc = doc.at("config");
    }
    expect_keys(doc, "",
                {"mode", "chain", "lambda", "alpha", "grids", "clusters", "epsilon_C", "nodes",
                 "threads", "threshold", "independent_angles", "figure"});
    RunConfig cfg;
    cfg.mode = get_string(doc, "", "mode", "");
    if (!mode_override.empty()) cfg.mode = mode_override;
    if (cfg.mode.empty())
        throw ConfigError(
            "mode is required: one of optimal-time, field, relay, clusters, critical, lifetime, "
            "boundary, crossing, reproduce-figure");
    if (doc.contains("chain")) {
        const json& c = doc.at("chain");
        expect_object(c, "chain");
        expect_keys(c, "chain", {"N", "D", "T_reg"});
        cfg.chain.N = get_integer(c, "chain", "N", cfg.chain.N);
        cfg.chain.D = get_number(c, "chain", "D", cfg.chain.D);
        cfg.chain.T_reg = get_number(c, "chain", "T_reg", cfg.chain.T_reg);
    }
    cfg.lambda = get_number(doc, "", "lambda", cfg.lambda);
    cfg.alpha = get_number(doc, "", "alpha", cfg.alpha);
    if (doc.contains("grids")) {
        const json& g = doc.at("grids");
        expect_object(g, "grids");
        expect_keys(g, "grids", {"lambda", "alpha", "time"});
        parse_grid(g, "grids", "lambda", cfg.lambda_grid);
        parse_grid(g, "grids", "alpha", cfg.alpha_grid);
        if (g.contains("time")) {
            const json& t = g.at("time");
            expect_object(t, "grids.time");
            expect_keys(t, "grids.time", {"horizon", "dt"});
            cfg.time.horizon = get_number(t, "grids.time", "horizon", cfg.time.horizon);
            cfg.time.dt = get_number(t, "grids.time", "dt", cfg.time.dt);
        }
    }
    if (doc.contains("clusters")) {
        const json& arr = doc.at("clusters");
        if (!arr.is_array()) throw ConfigError("'clusters' must be an array");
        for (size_t k = 0; k < arr.size(); ++k) {
            const std::string path = "clusters[" + std::to_string(k) + "]";
            const json& e = arr[k];
            expect_object(e, path);
            expect_keys(e, path, {"M", "i"});
            if (!e.contains("M")) throw ConfigError("'" + path + ".M' is required");
            ClusterSelector sel;
            sel.M = get_integer(e, path, "M", 0);
            sel.i = get_integer(e, path, "i", 0);
            cfg.clusters.push_back(sel);
        }
    }
    cfg.epsilon_C = get_number(doc, "", "epsilon_C", cfg.epsilon_C);
    cfg.nodes = get_integer(doc, "", "nodes", cfg.nodes);
    cfg.threads = get_integer(doc, "", "threads", cfg.threads);
    cfg.threshold = get_number(doc, "", "threshold", cfg.threshold);
    cfg.independent_angles = get_boolean(doc, "", "independent_angles", cfg.independent_angles);
    cfg.figure = get_string(doc, "", "figure", cfg.figure);
    validate(cfg);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["mode"] = cfg.mode;
    j["chain"] = {{"N", cfg.chain.N}, {"D", cfg.chain.D}, {"T_reg", cfg.chain.T_reg}};
    j["lambda"] = cfg.lambda;
    j["alpha"] = cfg.alpha;
    j["grids"]["lambda"] = {{"min", cfg.lambda_grid.min},
                            {"max", cfg.lambda_grid.max},
                            {"step", cfg.lambda_grid.step}};
    j["grids"]["alpha"] = {
        {"min", cfg.alpha_grid.min}, {"max", cfg.alpha_grid.max}, {"step", cfg.alpha_grid.step}};
    j["grids"]["time"] = {{"horizon", cfg.time.horizon}, {"dt", cfg.time.dt}};
    j["clusters"] = json::array();
    for (const auto& sel : cfg.clusters) j["clusters"].push_back({{"M", sel.M}, {"i", sel.i}});
    j["epsilon_C"] = cfg.epsilon_C;
    j["nodes"] = cfg.nodes;
    j["threads"] = cfg.threads;
    j["threshold"] = cfg.threshold;
    j["independent_angles"] = cfg.independent_angles;
    j["figure"] = cfg.figure;
    return j.dump(2) + "\n";
}

std::vector<ClusterSpec> expand_clusters(const RunConfig& cfg) {
    std::vector<ClusterSelector> selectors = cfg.clusters;
    if (selectors.empty()) {
        if (cfg.mode == "lifetime")
            for (int M : {3, 4, 5, 6}) selectors.push_back({M, 0});
        else
            for (int M : {3, 4, 5}) selectors.push_back({M, 0});
    }
    std::vector<ClusterSpec> out;
    for (const auto& sel : selectors) {
        if (sel.i > 0) {
            out.push_back({sel.M, sel.i, cfg.epsilon_C});
        } else {
            for (int i = 1; i <= cfg.chain.N - sel.M + 1; ++i)
                out.push_back({sel.M, i, cfg.epsilon_C});
        }
    }
    return out;
}

namespace {

// several scalar reductions of one concurrence field, evaluated together so
// a parameter point only pays for its field once
struct QuantitySet {
    std::vector<std::string> names;
    std::function<std::vector<double>(const ConcurrenceField&)> eval;
};

std::vector<std::vector<StatSummary>> sweep_stats(const SweepEngine& engine, const QuantitySet& q,
                                                  const std::vector<double>& axis, Axis integrated,
                                                  int nodes, int threads) {
    const auto base = gauss_legendre(nodes);
    const double pi = std::acos(-1.0);
    const QuadratureRule rule =
        integrated == Axis::alpha ? map_to(base, 0.0, 1.0) : map_to(base, 0.5, 1.0);
    const size_t n_nodes = rule.nodes.size(), n_q = q.names.size();
    std::vector<double> weights(n_nodes);
    for (size_t j = 0; j < n_nodes; ++j)
        weights[j] = integrated == Axis::alpha
                         ? 0.5 * pi * rule.weights[j] * std::sin(rule.nodes[j] * pi)
                         : 2.0 * rule.weights[j];
    std::vector<double> values(axis.size() * n_nodes * n_q);
    parallel_for(axis.size() * n_nodes, threads, [&](size_t slot) {
        const size_t a = slot / n_nodes, j = slot % n_nodes;
        const double lambda = integrated == Axis::alpha ? axis[a] : rule.nodes[j];
        const double alpha = integrated == Axis::alpha ? rule.nodes[j] : axis[a];
        try {
            const auto field = engine.field_at(symmetric_params(lambda, alpha), true);
            const auto v = q.eval(field);
            std::copy(v.begin(), v.end(), values.begin() + slot * n_q);
        } catch (const NumericalFailure& e) {
            rethrow_with_params(e, lambda, alpha);
        }
    });
    std::vector<std::vector<StatSummary>> out(axis.size(), std::vector<StatSummary>(n_q));
    std::vector<double> column(n_nodes);
    for (size_t a = 0; a < axis.size(); ++a) {
        for (size_t k = 0; k < n_q; ++k) {
            for (size_t j = 0; j < n_nodes; ++j) column[j] = values[(a * n_nodes + j) * n_q + k];
            out[a][k] = summarize_weighted(weights, column, integrated);
        }
    }
    return out;
}

void write_stat_csv(const fs::path& path, const std::string& axis_name,
                    const std::vector<double>& axis, const QuantitySet& q,
                    const std::vector<std::vector<StatSummary>>& stats) {
    CsvFile csv(path, {axis_name, "mean", "deviation", "quantity"});
    for (size_t k = 0; k < q.names.size(); ++k)
        for (size_t a = 0; a < axis.size(); ++a)
            csv.row({csv_number(axis[a]), csv_number(stats[a][k].mean),
                     csv_number(stats[a][k].deviation), q.names[k]});
}

QuantitySet partial_sum_quantities(const std::vector<int>& ms, double t_max) {
    QuantitySet q;
    for (int m : ms) {
        q.names.push_back("S" + std::to_string(m) + "_max");
        q.names.push_back("S" + std::to_string(m) + "_min");
    }
    q.eval = [ms, t_max](const ConcurrenceField& field) {
        RelayProfile profile = partial_sums(field);
        time_extrema(profile, t_max);
        std::vector<double> out;
        for (int m : ms) {
            out.push_back(profile.extrema[m - 1].s_max);
            out.push_back(profile.extrema[m - 1].s_min);
        }
        return out;
    };
    return q;
}

std::string cluster_tag(const char* prefix, const ClusterSpec& spec) {
    return std::string(prefix) + std::to_string(spec.M) + "_" + std::to_string(spec.i);
}

QuantitySet cluster_pmax_quantities(const std::vector<ClusterSpec>& specs) {
    QuantitySet q;
    for (const auto& spec : specs) q.names.push_back(cluster_tag("P", spec));
    q.eval = [specs](const ConcurrenceField& field) {
        std::vector<double> out;
        for (const auto& spec : specs) {
            const auto series = cluster_series(field, spec);
            out.push_back(*std::max_element(series.begin(), series.end()));
        }
        return out;
    };
    return q;
}

QuantitySet cluster_lifetime_quantities(const std::vector<ClusterSpec>& specs) {
    QuantitySet q;
    for (const auto& spec : specs) q.names.push_back(cluster_tag("T", spec));
    q.eval = [specs](const ConcurrenceField& field) {
        std::vector<double> out;
        for (const auto& spec : specs) out.push_back(cluster_report(field, spec).lifetime);
        return out;
    };
    return q;
}

void write_plot_script(const fs::path& dir, const std::string& name,
                       const std::vector<std::string>& lines) {
    std::ofstream out(dir / (name + ".gp"), std::ios::binary);
    if (!out) throw ConfigError("cannot open plot script in " + dir.string());
    out << "# gnuplot script, generated alongside " << name << " data\n";
    out << "set datafile separator ','\n";
    for (const auto& line : lines) out << line << '\n';
}

void run_optimal_time(RunConfig& cfg, const fs::path& dir) {
    optimal_time(cfg.chain, cfg.time.horizon, cfg.nodes);
    const AveragedSignal s(cfg.chain, cfg.nodes);
    CsvFile csv(dir / "signal.csv", {"t", "signal_mean"});
    for (double t : make_time_grid(cfg.time.horizon, cfg.time.dt))
        csv.row({csv_number(t), csv_number(s(t))});
    std::cout << "T_reg = " << csv_number(cfg.chain.T_reg) << "\n";
}

ConcurrenceField point_field(const RunConfig& cfg, double horizon) {
    const FieldOptions opts{cfg.threads, true};
    try {
        return compute_field(symmetric_params(cfg.lambda, cfg.alpha), cfg.chain,
                             make_time_grid(horizon, cfg.time.dt), opts);
    } catch (const NumericalFailure& e) {
        rethrow_with_params(e, cfg.lambda, cfg.alpha);
    }
}

void run_field(const RunConfig& cfg, const fs::path& dir) {
    const auto field = point_field(cfg, cfg.time.horizon);
    CsvFile csv(dir / "field.csv", {"t", "i", "j", "C"});
    for (size_t t = 0; t < field.times().size(); ++t)
        for (auto [i, j] : field.pair_labels())
            csv.row({csv_number(field.times()[t]), csv_integer(i), csv_integer(j),
                     csv_number(field.at(static_cast<int>(t), i, j))});
}

void run_relay(const RunConfig& cfg, const fs::path& dir) {
    const double horizon = std::max(cfg.time.horizon, cfg.chain.T_reg);
    const auto field = point_field(cfg, horizon);
    RelayProfile profile = partial_sums(field);

    const FieldEvaluator eval(cfg.chain);
    const PairCoefficients coeff = pair_coefficients(symmetric_params(cfg.lambda, cfg.alpha));
    const auto resample = [&](int m, double t) {
        const Frame frame = eval.frame_at(t);
        double sum = 0.0;
        for (int k = 1; k <= m; ++k) {
            double group = 0.0;
            for (int i = 1; i + k <= eval.n_sites(); ++i)
                group += concurrence(eval.pair_state(coeff, frame, i, i + k));
            sum += group / (eval.n_sites() - k);
        }
        return sum;
    };
    time_extrema(profile, cfg.chain.T_reg, resample);
    const RelayGaps gaps = negligibility_gaps(profile);
    const int groups = static_cast<int>(profile.group_means.size());

    CsvFile csv(dir / "relay.csv", {"t", "m", "C_m", "S_m"});
    for (size_t t = 0; t < profile.times.size(); ++t)
        for (int m = 1; m <= groups; ++m)
            csv.row({csv_number(profile.times[t]), csv_integer(m),
                     csv_number(profile.group_means[m - 1][t]),
                     csv_number(profile.partial_sums[m - 1][t])});

    CsvFile extrema(dir / "relay_extrema.csv", {"m", "S_max", "S_min"});
    for (int m = 1; m <= groups; ++m)
        extrema.row({csv_integer(m), csv_number(profile.extrema[m - 1].s_max),
                     csv_number(profile.extrema[m - 1].s_min)});

    CsvFile gap_csv(dir / "relay_gaps.csv", {"m", "max_gap", "min_gap"});
    for (int m = 2; m <= groups; ++m)
        gap_csv.row({csv_integer(m), csv_number(gaps.max_gap[m - 2]),
                     csv_number(gaps.min_gap[m - 2])});
}

void run_clusters(const RunConfig& cfg, const fs::path& dir) {
    const SweepEngine engine(cfg.chain, cfg.chain.T_reg, cfg.time.dt, cfg.threads);
    const CriticalGrid grid{cfg.lambda_grid.points(), cfg.alpha_grid.points()};
    CsvFile csv(dir / "clusters.csv",
                {"M", "i", "lambda", "alpha", "p_max", "t_peak", "t_l", "t_r", "lifetime"});
    for (const auto& spec : expand_clusters(cfg)) {
        for (const auto& pt : cluster_grid(engine, spec, grid)) {
            csv.row({csv_integer(spec.M), csv_integer(spec.i), csv_number(pt.lambda),
                     csv_number(pt.alpha), csv_number(pt.report.p_max),
                     csv_number(pt.report.t_peak), csv_number(pt.report.t_l),
                     csv_number(pt.report.t_r), csv_number(pt.report.lifetime)});
        }
    }
}

void run_critical(const RunConfig& cfg, const fs::path& dir) {
    const SweepEngine engine(cfg.chain, cfg.chain.T_reg, cfg.time.dt, cfg.threads);
    const CriticalGrid grid{cfg.lambda_grid.points(), cfg.alpha_grid.points()};
    CsvFile csv(dir / "critical.csv", {"M", "i", "lambda_c", "alpha_c", "defined"});
    for (const auto& spec : expand_clusters(cfg)) {
        const CriticalValues cv = critical_values(engine, spec, grid, cfg.threshold);
        csv.row({csv_integer(spec.M), csv_integer(spec.i), csv_number(cv.lambda_c),
                 csv_number(cv.alpha_c), csv_integer(cv.defined ? 1 : 0)});
    }
}

void run_lifetime(const RunConfig& cfg, const fs::path& dir) {
    const SweepEngine engine(cfg.chain, cfg.chain.T_reg, cfg.time.dt, cfg.threads);
    const auto specs = expand_clusters(cfg);
    const QuantitySet q = cluster_lifetime_quantities(specs);
    const auto lambdas = cfg.lambda_grid.points();
    const auto alphas = cfg.alpha_grid.points();
    write_stat_csv(dir / "lifetime_lambda.csv", "lambda", lambdas, q,
                   sweep_stats(engine, q, lambdas, Axis::alpha, cfg.nodes, cfg.threads));
    write_stat_csv(dir / "lifetime_alpha.csv", "alpha", alphas, q,
                   sweep_stats(engine, q, alphas, Axis::lambda, cfg.nodes, cfg.threads));
}

void run_boundary(const RunConfig& cfg, const fs::path& dir, const std::string& prefix) {
    BoundaryOptions opts;
    opts.threshold = cfg.threshold;
    opts.dt = cfg.time.dt;
    opts.independent_angles = cfg.independent_angles;
    opts.threads = cfg.threads;
    const auto grid = cfg.lambda_grid.points();
    const BoundaryCurve curve = boundary_scan(cfg.chain, grid, grid, opts);

    CsvFile region(dir / (prefix + "region.csv"), {"lambda_R", "lambda_S", "entangled"});
    const size_t cols = curve.lambda_S.size();
    for (size_t r = 0; r < curve.lambda_R.size(); ++r)
        for (size_t s = 0; s < cols; ++s)
            region.row({csv_number(curve.lambda_R[r]), csv_number(curve.lambda_S[s]),
                        csv_integer(curve.entangled[r * cols + s])});

    CsvFile boundary(dir / (prefix + "boundary.csv"), {"lambda_R", "lambda_S"});
    for (const auto& [lR, lS] : curve.points)
        boundary.row({csv_number(lR), csv_number(lS)});

    CsvFile crossing(dir / (prefix + "crossing.csv"), {"lambda", "alpha"});
    crossing.row({csv_number(curve.crossing.lambda), csv_number(curve.crossing.alpha)});
    std::cout << "crossing: lambda = " << csv_number(curve.crossing.lambda)
              << ", alpha = " << csv_number(curve.crossing.alpha) << "\n";
}

void run_crossing(const RunConfig& cfg, const fs::path& dir) {
    SearchOptions opts;
    opts.threshold = cfg.threshold;
    opts.dt = cfg.time.dt;
    opts.threads = cfg.threads;
    const CrossingPoint cp = bisectrix_crossing(cfg.chain, opts);
    CsvFile csv(dir / "crossing.csv", {"lambda", "alpha"});
    csv.row({csv_number(cp.lambda), csv_number(cp.alpha)});
    std::cout << "crossing: lambda = " << csv_number(cp.lambda)
              << ", alpha = " << csv_number(cp.alpha) << "\n";
}

std::vector<ClusterSpec> figure_cluster_set(const RunConfig& cfg, std::vector<int> sizes) {
    std::vector<ClusterSpec> specs;
    for (int M : sizes)
        for (int i = 1; i <= cfg.chain.N - M + 1; ++i) specs.push_back({M, i, cfg.epsilon_C});
    return specs;
}

void run_figure(const RunConfig& cfg, const fs::path& dir) {
    const std::string& fig = cfg.figure;
    if (fig == "fig1") {
        run_boundary(cfg, dir, "fig1_");
        write_plot_script(dir, "fig1",
                          {"set xlabel 'lambda_R'", "set ylabel 'lambda_S'", "set view map",
                           "splot 'fig1_region.csv' using 1:2:3 with points pt 5 palette, \\",
                           "      'fig1_boundary.csv' using 1:2:(0) with points pt 7 lc 'black'"});
        return;
    }
    if (fig == "fig2") {
        const auto field = point_field(cfg, cfg.chain.T_reg);
        const auto c1 = group_mean(field, 1);
        const auto c2 = group_mean(field, 2);
        CsvFile csv(dir / "fig2.csv", {"t", "C1", "C2"});
        for (size_t t = 0; t < field.times().size(); ++t)
            csv.row({csv_number(field.times()[t]), csv_number(c1[t]), csv_number(c2[t])});
        write_plot_script(dir, "fig2",
                          {"set xlabel 't'", "set ylabel 'group concurrence'",
                           "plot 'fig2.csv' using 1:2 with lines title 'C_1', \\",
                           "     'fig2.csv' using 1:3 with lines dashtype 2 title 'C_2'"});
        return;
    }

    const SweepEngine engine(cfg.chain, cfg.chain.T_reg, cfg.time.dt, cfg.threads);
    const auto lambdas = cfg.lambda_grid.points();
    const auto alphas = cfg.alpha_grid.points();
    const std::vector<int> ms = {1, 2, 3, cfg.chain.N - 1};

    const auto errorbar_script = [&](const std::string& name, const std::string& axis) {
        write_plot_script(dir, name,
                          {"set xlabel '" + axis + "'", "set ylabel 'mean with deviation bars'",
                           "plot '" + name + ".csv' using 1:2:3 with yerrorlines title columnhead"});
    };

    if (fig == "fig3" || fig == "fig4") {
        const QuantitySet q = partial_sum_quantities(ms, cfg.chain.T_reg);
        if (fig == "fig3") {
            write_stat_csv(dir / "fig3.csv", "lambda", lambdas, q,
                           sweep_stats(engine, q, lambdas, Axis::alpha, cfg.nodes, cfg.threads));
            errorbar_script("fig3", "lambda");
        } else {
            write_stat_csv(dir / "fig4.csv", "alpha", alphas, q,
                           sweep_stats(engine, q, alphas, Axis::lambda, cfg.nodes, cfg.threads));
            errorbar_script("fig4", "alpha");
        }
        return;
    }
    if (fig == "fig5") {
        const CriticalGrid grid{lambdas, alphas};
        const MiddlePairSurfaces surfaces = middle_pair_scan(engine, grid);
        const int n = cfg.chain.N;
        const std::string mid_name =
            "C" + std::to_string(n / 2) + std::to_string(n / 2 + 1) + "_max";
        CsvFile csv(dir / "fig5.csv", {"lambda", "alpha", "C12_max", mid_name});
        const size_t cols = surfaces.alphas.size();
        for (size_t l = 0; l < surfaces.lambdas.size(); ++l)
            for (size_t a = 0; a < cols; ++a)
                csv.row({csv_number(surfaces.lambdas[l]), csv_number(surfaces.alphas[a]),
                         csv_number(surfaces.c_edge[l * cols + a]),
                         csv_number(surfaces.c_middle[l * cols + a])});
        write_plot_script(dir, "fig5",
                          {"set xlabel 'lambda'", "set ylabel 'alpha'", "set view map",
                           "splot 'fig5.csv' using 1:2:3 with points pt 5 palette title 'C_{12}'",
                           "pause -1", "splot 'fig5.csv' using 1:2:4 with points pt 5 palette"});
        return;
    }
    if (fig == "fig6" || fig == "fig7") {
        const QuantitySet q = cluster_pmax_quantities(figure_cluster_set(cfg, {3, 4, 5}));
        if (fig == "fig6") {
            write_stat_csv(dir / "fig6.csv", "lambda", lambdas, q,
                           sweep_stats(engine, q, lambdas, Axis::alpha, cfg.nodes, cfg.threads));
            errorbar_script("fig6", "lambda");
        } else {
            write_stat_csv(dir / "fig7.csv", "alpha", alphas, q,
                           sweep_stats(engine, q, alphas, Axis::lambda, cfg.nodes, cfg.threads));
            errorbar_script("fig7", "alpha");
        }
        return;
    }
    if (fig == "fig8") {
        const QuantitySet q = cluster_pmax_quantities(figure_cluster_set(cfg, {6, cfg.chain.N}));
        write_stat_csv(dir / "fig8_lambda.csv", "lambda", lambdas, q,
                       sweep_stats(engine, q, lambdas, Axis::alpha, cfg.nodes, cfg.threads));
        write_stat_csv(dir / "fig8_alpha.csv", "alpha", alphas, q,
                       sweep_stats(engine, q, alphas, Axis::lambda, cfg.nodes, cfg.threads));
        errorbar_script("fig8_lambda", "lambda");
        errorbar_script("fig8_alpha", "alpha");
        return;
    }
    const QuantitySet q = cluster_lifetime_quantities(figure_cluster_set(cfg, {3, 4, 5, 6}));
    write_stat_csv(dir / "fig9_lambda.csv", "lambda", lambdas, q,
                   sweep_stats(engine, q, lambdas, Axis::alpha, cfg.nodes, cfg.threads));
    write_stat_csv(dir / "fig9_alpha.csv", "alpha", alphas, q,
                   sweep_stats(engine, q, alphas, Axis::lambda, cfg.nodes, cfg.threads));
    errorbar_script("fig9_lambda", "lambda");
    errorbar_script("fig9_alpha", "alpha");
}

bool needs_t_reg(const std::string& mode) {
    return mode != "optimal-time" && mode != "field";
}

void write_manifest(const RunConfig& cfg, const fs::path& dir) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["mode"] = cfg.mode;
    m["T_reg"] = cfg.chain.T_reg;
    m["config"] = json::parse(serialize_config(cfg));
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw ConfigError("cannot write manifest in " + dir.string());
    out << m.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int run(const RunConfig& config) {
    RunConfig cfg = config;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());

    if (cfg.mode == "optimal-time") {
        run_optimal_time(cfg, dir);
    } else {
        if (needs_t_reg(cfg.mode) && !(cfg.chain.T_reg > 0.0))
            optimal_time(cfg.chain, cfg.time.horizon, cfg.nodes);
        if (cfg.mode == "field")
            run_field(cfg, dir);
        else if (cfg.mode == "relay")
            run_relay(cfg, dir);
        else if (cfg.mode == "clusters")
            run_clusters(cfg, dir);
        else if (cfg.mode == "critical")
            run_critical(cfg, dir);
        else if (cfg.mode == "lifetime")
            run_lifetime(cfg, dir);
        else if (cfg.mode == "boundary")
            run_boundary(cfg, dir, "");
        else if (cfg.mode == "crossing")
            run_crossing(cfg, dir);
        else
            run_figure(cfg, dir);
    }
    write_manifest(cfg, dir);
    return 0;
}

int cli_main(int argc, char** argv) {
    std::string config_path, out_dir, mode;
    int threads = 0, nodes = 0;
    double dt = 0.0, horizon = 0.0;

    CLI::App app{"entanglement propagation toolkit for an XX spin chain"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.add_option("--config", config_path, "JSON config file, or a manifest from an earlier run");
    app.add_option("--out", out_dir, "output directory (overrides config and XXRELAY_OUT)");
    app.add_option("--threads", threads, "worker thread count")->check(CLI::PositiveNumber);
    app.add_option("--dt", dt, "time grid step")->check(CLI::PositiveNumber);
    app.add_option("--nodes", nodes, "quadrature nodes per axis")->check(CLI::PositiveNumber);
    app.add_option("--horizon", horizon, "time horizon")->check(CLI::PositiveNumber);
    app.require_subcommand(0, 1);
    for (const auto& name : mode_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " mode");
        sub->fallthrough();
        sub->callback([&mode, name] { mode = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::string text = config_path.empty() ? std::string("{}") : read_file(config_path);
        RunConfig cfg = parse_config(text, mode);
        if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0')
            cfg.output_dir = env;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (nodes > 0) cfg.nodes = nodes;
        if (dt > 0.0) cfg.time.dt = dt;
        if (horizon > 0.0) cfg.time.horizon = horizon;
        return run(cfg);
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace xxrelay
