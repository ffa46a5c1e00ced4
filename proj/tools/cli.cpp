// SPDX-License-Identifier: Apache-2.0
//
// gammaclutter: detection statistics for fluctuating targets in compound clutter
// Copyright (C) 2026 The gammaclutter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include "gammaclutter/detector.hpp"
#include "gammaclutter/error.hpp"
#include "gammaclutter/fpm_mc.hpp"
#include "gammaclutter/gof_stats.hpp"

#include <CLI11.hpp>

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace gcl::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

[[noreturn]] void schema_error(const std::string &what) { fail(ErrorCode::InvalidParameter, "scenario: " + what); }

double number_or_inf(const nlohmann::json &v, const char *key)
{
    if (v.is_string() && v.get<std::string>() == "inf") return kInfiniteShape;
    if (!v.is_number()) schema_error(std::string(key) + " must be a number or \"inf\"");
    return v.get<double>();
}

double number(const nlohmann::json &doc, const char *key, double fallback)
{
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) schema_error(std::string(key) + " must be a number");
    return doc[key].get<double>();
}

std::vector<double> number_list(const nlohmann::json &v, const char *key)
{
    if (!v.is_array()) schema_error(std::string(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto &x : v) {
        if (!x.is_number()) schema_error(std::string(key) + " must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

CorrelationSpec correlation(const nlohmann::json &doc, const char *rho_key, const char *row_key, int pulses)
{
    if (doc.contains(row_key)) {
        if (doc.contains(rho_key)) schema_error(std::string("give either ") + rho_key + " or " + row_key);
        auto row = number_list(doc[row_key], row_key);
        if (static_cast<int>(row.size()) != pulses) fail(ErrorCode::DimensionMismatch, std::string(row_key) + " must have M entries");
        return CorrelationSpec::toeplitz(std::move(row));
    }
    return CorrelationSpec::gauss_markov(number(doc, rho_key, 0.0), pulses);
}

std::vector<Method> parse_method_list(const std::string &list)
{
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        if (item == "all") {
            for (Method m : all_methods()) out.push_back(m);
            continue;
        }
        out.push_back(parse_method(item));
    }
    if (out.empty()) schema_error("empty method list");
    return out;
}

// "a:b:step" or "x,y,z" in dB.
std::vector<double> parse_db_grid(const std::string &spec)
{
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::stringstream ss(spec);
        ss.imbue(std::locale::classic());
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b < a)
            schema_error("SIR grid must look like start:stop:step");
        for (int i = 0; a + i * step <= b + 1e-9 * step; ++i) out.push_back(a + i * step);
        return out;
    }
    std::stringstream ss(spec);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

std::string header_line(const Scenario &sc, const nlohmann::json &extra)
{
    nlohmann::json j = {{"scenario", sc.echo}, {"run", extra}};
    return "# " + j.dump();
}

class Output {
public:
    explicit Output(const std::string &path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void apply_threads(int threads)
{
    if (threads <= 0) {
        if (const char *env = std::getenv("GAMMACLUTTER_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

CompoundOptions compound_options(const Scenario &sc)
{
    CompoundOptions o;
    o.texture_order = sc.texture_order;
    return o;
}

struct Common {
    std::string scenario_path;
    std::string out = "-";
    std::string methods;
    int threads = 0;
    int texture_order = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

Scenario resolve(const Common &c)
{
    Scenario sc = load_scenario(c.scenario_path);
    if (!c.methods.empty()) sc.methods = parse_method_list(c.methods);
    if (c.texture_order > 0) sc.texture_order = c.texture_order;
    if (c.seed_set) sc.seed = c.seed;
    apply_threads(c.threads);
    return sc;
}

int cmd_survival(const Common &c, double v_min, double v_max, int points)
{
    const Scenario sc = resolve(c);
    if (points < 2) schema_error("--v-points must be >= 2");
    std::vector<CompoundModel> models;
    for (Method m : sc.methods) models.emplace_back(sc.params, m, compound_options(sc));
    if (!(v_max > 0.0)) {
        const CompoundModel &ref = models.front();
        v_max = survival_horizon([&ref](double v) { return ref.survival(v); }, ref.mean(), 1e-6);
    }
    if (!(v_max > v_min) || v_min < 0.0) schema_error("need 0 <= v-min < v-max");
    const std::vector<double> v = linspace(v_min, v_max, points);
    std::vector<std::vector<double>> columns;
    for (const auto &m : models) columns.push_back(m.survival_grid(v));

    Output out(c.out);
    auto &os = out.stream();
    nlohmann::json run = {{"command", "survival"}, {"v_min", v_min}, {"v_max", v_max}, {"v_points", points}};
    for (const auto &m : models) run["texture_order"][to_string(m.method())] = m.rule().order;
    os << header_line(sc, run) << '\n' << "v";
    for (Method m : sc.methods) os << ",sf_" << to_string(m);
    os << '\n';
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << format_number(v[i]);
        for (const auto &col : columns) os << ',' << format_number(col[i]);
        os << '\n';
    }
    return kExitOk;
}

int cmd_pd(const Common &c, const std::string &grid_db)
{
    const Scenario sc = resolve(c);
    std::vector<double> db = grid_db.empty() ? sc.sir_grid_db : parse_db_grid(grid_db);
    if (db.empty()) schema_error("no SIR grid (use S_grid_dB or --sir-grid-db)");
    if (!std::is_sorted(db.begin(), db.end())) schema_error("SIR grid must be ascending");
    std::vector<double> sir;
    for (double d : db) sir.push_back(from_db(d));

    std::vector<DetectionCurve> curves;
    for (Method m : sc.methods) curves.push_back(pd_curve(sc.params, sc.pfa, sir, m, compound_options(sc)));

    Output out(c.out);
    auto &os = out.stream();
    nlohmann::json run = {{"command", "pd"}, {"pfa", sc.pfa}};
    for (const auto &cv : curves) run["threshold"][to_string(cv.method)] = cv.threshold;
    os << header_line(sc, run) << '\n' << "S_dB";
    for (Method m : sc.methods) os << ",pd_" << to_string(m);
    os << '\n';
    for (std::size_t i = 0; i < db.size(); ++i) {
        os << format_number(db[i]);
        for (const auto &cv : curves) os << ',' << format_number(cv.pd[i]);
        os << '\n';
    }
    return kExitOk;
}

// Tabulated analytic survival for KS work.
SurvivalCurve analytic_curve(const Scenario &sc, Method method, int points)
{
    const CompoundModel model(sc.params, method, compound_options(sc));
    const double v_max = survival_horizon([&model](double v) { return model.survival(v); }, model.mean(), 1e-9);
    return SurvivalCurve::tabulate(model, v_max, points);
}

McConfig mc_config(const Scenario &sc, std::int64_t samples)
{
    McConfig mc;
    mc.params = sc.params;
    mc.n_samples = samples;
    mc.seed = sc.seed;
    return mc;
}

int cmd_compare(const Common &c, int replicates, std::int64_t samples, double alpha, int table_points)
{
    const Scenario sc = resolve(c);
    nlohmann::json doc = {{"scenario", sc.echo}, {"replicates", replicates}, {"samples", samples}, {"alpha", alpha}};
    for (Method m : sc.methods) {
        const SurvivalCurve curve = analytic_curve(sc, m, table_points);
        EnsembleOptions opts;
        opts.alpha = alpha;
        opts.bootstrap_seed = sc.seed;
        const KSEnsemble e = ks_ensemble(mc_config(sc, samples), [&curve](double v) { return curve(v); }, replicates, opts);
        nlohmann::json j = to_json(e);
        j["method"] = to_string(m);
        doc["ensembles"].push_back(j);
    }
    Output out(c.out);
    out.stream() << doc.dump(1) << '\n';
    return kExitOk;
}

int cmd_power(const Common &c, double delta, int replicates, std::int64_t samples, int studies, double alpha, int table_points)
{
    const Scenario sc = resolve(c);
    const Method m = sc.methods.front();
    const SurvivalCurve curve = analytic_curve(sc, m, table_points);
    EnsembleOptions opts;
    opts.alpha = alpha;
    opts.bootstrap_seed = sc.seed;
    const PowerStudyResult r =
        power_study(mc_config(sc, samples), [&curve](double v) { return curve(v); }, delta, replicates, studies, opts);
    nlohmann::json doc = {{"scenario", sc.echo},   {"method", to_string(m)},  {"delta_max", delta},
                          {"epsilon", r.epsilon},  {"replicates", replicates}, {"samples", samples},
                          {"studies", r.studies},  {"rejections", r.rejections}, {"power", r.power},
                          {"alpha", alpha},        {"mean_statistics", r.mean_statistics}};
    Output out(c.out);
    out.stream() << doc.dump(1) << '\n';
    return kExitOk;
}

int cmd_simulate(const Common &c, std::int64_t samples, const std::string &dump)
{
    const Scenario sc = resolve(c);
    const std::vector<double> x = simulate_raw(mc_config(sc, samples));
    if (!dump.empty()) write_sample_dump(dump, x, sc.params.M, sc.seed);
    if (c.out.empty()) return kExitOk;
    Output out(c.out);
    auto &os = out.stream();
    os << header_line(sc, {{"command", "simulate"}, {"samples", samples}}) << "\npower\n";
    for (double v : x) os << format_number(v) << '\n';
    return kExitOk;
}

int cmd_bench(const Common &c, int draws, int points, bool json_out)
{
    apply_threads(c.threads);
    const std::uint64_t seed = c.seed_set ? c.seed : 1;
    const std::vector<Method> methods = c.methods.empty() ? all_methods() : parse_method_list(c.methods);
    struct Acc {
        double seconds = 0.0, max_abs = 0.0, max_rel = 0.0;
    };
    std::vector<Acc> acc(methods.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> s_dist(1.0, 10.0), nu_dist(1.0, 10.0), q_dist(0.5, 1.0);
    CompoundOptions opts;
    opts.refine_order = false;
    if (c.texture_order > 0) opts.texture_order = c.texture_order;

    for (int d = 0; d < draws; ++d) {
        const double S = s_dist(rng), nu = nu_dist(rng), q = q_dist(rng);
        const ScenarioParams p = ScenarioParams::gauss_markov(100, Kappa(2), S, q, nu, 0.95, 0.75);
        const CompoundModel ref(p, Method::EffSdp, opts);
        const double v_end = threshold_for_level([&ref](double v) { return ref.survival(v); }, ref.mean(), p.M, 1e-3);
        const std::vector<double> v = linspace(v_end / points, v_end, points);
        const std::vector<double> truth = ref.survival_grid(v);
        for (std::size_t k = 0; k < methods.size(); ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const CompoundModel model(p, methods[k], opts);
            const std::vector<double> f = model.survival_grid(v);
            acc[k].seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double diff = std::abs(f[i] - truth[i]);
                acc[k].max_abs = std::max(acc[k].max_abs, diff);
                acc[k].max_rel = std::max(acc[k].max_rel, diff / truth[i]);
            }
        }
    }
    Output out(c.out);
    auto &os = out.stream();
    if (json_out) {
        nlohmann::json doc = {{"draws", draws}, {"points", points}, {"seed", seed}};
        for (std::size_t k = 0; k < methods.size(); ++k)
            doc["methods"].push_back({{"method", to_string(methods[k])},
                                      {"mean_seconds", acc[k].seconds / draws},
                                      {"max_abs_error", acc[k].max_abs},
                                      {"max_rel_error", acc[k].max_rel}});
        os << doc.dump(1) << '\n';
    } else {
        os << "# draws=" << draws << " points=" << points << " seed=" << seed << '\n';
        os << "method,mean_seconds,max_abs_error,max_rel_error\n";
        for (std::size_t k = 0; k < methods.size(); ++k)
            os << to_string(methods[k]) << ',' << format_number(acc[k].seconds / draws) << ','
               << format_number(acc[k].max_abs) << ',' << format_number(acc[k].max_rel) << '\n';
    }
    return kExitOk;
}

} // namespace

Scenario parse_scenario(const nlohmann::json &doc)
{
    static const std::set<std::string> known = {"M",   "kappa",  "S",      "S_grid_dB",    "q",   "nu",
                                                "rho_s", "rho_c", "toeplitz_s", "toeplitz_c", "pfa", "method",
                                                "methods", "texture_order", "seed"};
    if (!doc.is_object()) schema_error("top level must be an object");
    for (const auto &[key, value] : doc.items())
        if (!known.count(key)) schema_error("unknown key '" + key + "'");
    for (const char *key : {"M", "kappa", "q"})
        if (!doc.contains(key)) schema_error(std::string("missing required key '") + key + "'");

    Scenario sc;
    if (!doc["M"].is_number_integer() || doc["M"].get<int>() < 1) schema_error("M must be an integer >= 1");
    const int m = doc["M"].get<int>();
    const auto &k = doc["kappa"];
    Kappa kappa = Kappa::infinite();
    if (k.is_string()) {
        if (k.get<std::string>() != "inf") schema_error("kappa must be an integer >= 1 or \"inf\"");
    } else if (k.is_number_integer() && k.get<int>() >= 1) {
        kappa = Kappa(k.get<int>());
    } else {
        schema_error("kappa must be an integer >= 1 or \"inf\"");
    }
    sc.params.M = m;
    sc.params.kappa = kappa;
    sc.params.S = number(doc, "S", 0.0);
    sc.params.q = number(doc, "q", 0.0);
    sc.params.nu = doc.contains("nu") ? number_or_inf(doc["nu"], "nu") : kInfiniteShape;
    sc.params.spec_s = correlation(doc, "rho_s", "toeplitz_s", m);
    sc.params.spec_c = correlation(doc, "rho_c", "toeplitz_c", m);
    sc.params.validate();
    if (doc.contains("S_grid_dB")) sc.sir_grid_db = number_list(doc["S_grid_dB"], "S_grid_dB");
    sc.pfa = number(doc, "pfa", 1e-6);
    if (!(sc.pfa > 0.0 && sc.pfa < 1.0)) schema_error("pfa must lie in (0, 1)");
    if (doc.contains("method") && doc.contains("methods")) schema_error("give either method or methods");
    if (doc.contains("method")) {
        if (!doc["method"].is_string()) schema_error("method must be a string");
        sc.methods = {parse_method(doc["method"].get<std::string>())};
    }
    if (doc.contains("methods")) {
        if (!doc["methods"].is_array()) schema_error("methods must be an array of strings");
        sc.methods.clear();
        for (const auto &x : doc["methods"]) {
            if (!x.is_string()) schema_error("methods must be an array of strings");
            sc.methods.push_back(parse_method(x.get<std::string>()));
        }
    }
    if (doc.contains("texture_order")) {
        if (!doc["texture_order"].is_number_integer()) schema_error("texture_order must be an integer");
        sc.texture_order = doc["texture_order"].get<int>();
        if (sc.texture_order < 1) schema_error("texture_order must be >= 1");
        if (sc.texture_order > kMaxTextureOrder) fail(ErrorCode::OrderTooLarge, "texture_order exceeds 256");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) schema_error("seed must be a non-negative integer");
        sc.seed = doc["seed"].get<std::uint64_t>();
    }
    sc.echo = doc;
    sc.echo["texture_order"] = sc.texture_order;
    sc.echo["seed"] = sc.seed;
    sc.echo["pfa"] = sc.pfa;
    if (!doc.contains("methods")) sc.echo["method"] = to_string(sc.methods.front());
    return sc;
}

Scenario load_scenario(const std::string &path)
{
    if (path.empty()) schema_error("--scenario is required");
    std::ifstream is(path);
    if (!is) fail(ErrorCode::Io, "cannot open scenario '" + path + "'");
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception &e) {
        schema_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

std::string format_number(double x)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

int run(int argc, char **argv)
{
    CLI::App app{"gammaclutter: detection statistics for fluctuating targets in compound clutter"};
    app.require_subcommand(1);
    Common common;

    const auto add_common = [&common](CLI::App *sub, bool needs_scenario) {
        auto *opt = sub->add_option("--scenario", common.scenario_path, "scenario JSON file");
        if (needs_scenario) opt->required();
        sub->add_option("--out", common.out, "output file ('-' for stdout)");
        sub->add_option("--methods", common.methods, "comma-separated methods: eff-sdp, eff-sp, dmg-sdp, dmg-sp, diag-sdp, diag-sp, eff-pade, all");
        sub->add_option("--threads", common.threads, "OpenMP threads (0 = GAMMACLUTTER_THREADS or runtime default)");
        sub->add_option("--texture-order", common.texture_order, "texture quadrature order (overrides the scenario)");
        sub->add_option_function<std::uint64_t>("--seed", [&common](const std::uint64_t &s) {
            common.seed = s;
            common.seed_set = true;
        }, "random seed (overrides the scenario)");
    };

    double v_min = 0.0, v_max = 0.0, alpha = 0.01, delta = 0.003;
    int v_points = 200, replicates = 400, studies = 20, draws = 100, bench_points = 100, table_points = 1000;
    std::int64_t samples = 10000;
    std::string grid_db, dump;
    bool json_out = false;

    auto *survival = app.add_subcommand("survival", "compound survival curves as CSV");
    add_common(survival, true);
    survival->add_option("--v-min", v_min, "first grid point");
    survival->add_option("--v-max", v_max, "last grid point (default: where the first method reaches 1e-6)");
    survival->add_option("--v-points", v_points, "grid size");

    auto *pd = app.add_subcommand("pd", "detection probability versus SIR (dB) as CSV; threshold tolerance 1e-3 relative in P_FA or better");
    add_common(pd, true);
    pd->add_option("--sir-grid-db", grid_db, "start:stop:step or comma list (overrides S_grid_dB)");

    auto *compare = app.add_subcommand("compare", "KS ensemble of first-principles MC versus analytic survival (JSON)");
    add_common(compare, true);
    compare->add_option("--replicates", replicates, "independent MC runs (K)");
    compare->add_option("--samples", samples, "samples per run (n)");
    compare->add_option("--alpha", alpha, "significance level");
    compare->add_option("--table-points", table_points, "tabulation points of the analytic survival");

    auto *power = app.add_subcommand("power", "statistical power against a perturbed survival (JSON)");
    add_common(power, true);
    power->add_option("--delta", delta, "maximum survival deformation delta_max");
    power->add_option("--replicates", replicates, "MC runs per ensemble (K)");
    power->add_option("--samples", samples, "samples per run (n)");
    power->add_option("--studies", studies, "repeated ensembles");
    power->add_option("--alpha", alpha, "significance level");
    power->add_option("--table-points", table_points, "tabulation points of the analytic survival");

    auto *simulate = app.add_subcommand("simulate", "first-principles MC samples (CSV and/or binary dump)");
    add_common(simulate, true);
    simulate->add_option("--samples", samples, "number of samples");
    simulate->add_option("--dump", dump, "binary dump path");

    auto *bench = app.add_subcommand("bench", "run time and accuracy of the six methods over randomized M = 100 scenarios");
    add_common(bench, false);
    bench->add_option("--draws", draws, "randomized parameter draws");
    bench->add_option("--v-points", bench_points, "survival grid points per draw");
    bench->add_flag("--json", json_out, "emit JSON instead of CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*survival) return cmd_survival(common, v_min, v_max, v_points);
        if (*pd) return cmd_pd(common, grid_db);
        if (*compare) return cmd_compare(common, replicates, samples, alpha, table_points);
        if (*power) return cmd_power(common, delta, replicates, samples, studies, alpha, table_points);
        if (*simulate) return cmd_simulate(common, samples, dump);
        if (*bench) return cmd_bench(common, draws, bench_points, json_out);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_config_error(e.code()) ? kExitConfig : kExitNumeric;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}

} // namespace gcl::cli
