// Batch experiment runner behind the CLI: JSON experiment configs, the
// run/compare/classify commands, and their reports.

#pragma once

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <set>

#include <json.hpp>

#include "moa/properties.hpp"
#include "moa/sequences.hpp"

namespace moa {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace exp {

inline FrontShape front_shape_from(const std::string& s) {
    for (FrontShape v : {FrontShape::linear, FrontShape::concave, FrontShape::convex,
                         FrontShape::disconnected, FrontShape::degenerate})
        if (s == front_shape_name(v)) return v;
    throw UsageError("unknown front shape: " + s);
}

inline OrderKind order_kind_from(const std::string& s) {
    for (OrderKind v : {OrderKind::shuffle, OrderKind::lexicographic_sweep,
                        OrderKind::extremes_first, OrderKind::replay})
        if (s == order_kind_name(v)) return v;
    throw UsageError("unknown order policy: " + s);
}

inline ArchiverKind archiver_kind_from(const std::string& s) {
    for (ArchiverKind v : {ArchiverKind::unbounded, ArchiverKind::a_dom, ArchiverKind::eps_box,
                           ArchiverKind::mga, ArchiverKind::nsga2, ArchiverKind::moead,
                           ArchiverKind::indicator_mu1, ArchiverKind::weak_compliant})
        if (s == archiver_kind_name(v)) return v;
    throw UsageError("unknown archiver kind: " + s);
}

inline IndicatorKind indicator_kind_from(const std::string& s) {
    for (IndicatorKind v : {IndicatorKind::hypervolume, IndicatorKind::epsilon_additive,
                            IndicatorKind::igd_plus, IndicatorKind::r2})
        if (s == indicator_name(v)) return v;
    throw UsageError("unknown indicator kind: " + s);
}

inline ObjectiveVector vector_from(const json& j) {
    if (!j.is_array() || j.size() < 2) throw UsageError("expected an objective vector array");
    ObjectiveVector v;
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

inline ObjectiveVector universe_nadir_plus_one(const SolutionSet& universe) {
    ObjectiveVector ref = universe.front();
    for (const auto& p : universe)
        for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = std::max(ref[i], p[i]);
    for (double& x : ref) x += 1.0;
    return ref;
}

inline ObjectiveVector universe_ideal(const SolutionSet& universe) {
    ObjectiveVector lo = universe.front();
    for (const auto& p : universe)
        for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], p[i]);
    return lo;
}

// Indicator configuration with per-universe defaults: reference sets fall
// back to the minimal set of the ground set, the r2 utopian point to the
// universe minimum shifted strictly below, and the hypervolume reference
// point to the universe nadir plus one.
inline IndicatorSpec indicator_from_json(const json& j, const SolutionSet& universe) {
    if (!j.contains("kind")) throw UsageError("indicator needs a kind");
    IndicatorSpec spec;
    spec.kind = indicator_kind_from(j.at("kind").get<std::string>());
    const std::size_t d = universe.front().size();
    switch (spec.kind) {
        case IndicatorKind::hypervolume:
            spec.reference_point = j.contains("reference_point")
                                       ? vector_from(j.at("reference_point"))
                                       : universe_nadir_plus_one(universe);
            break;
        case IndicatorKind::epsilon_additive:
        case IndicatorKind::igd_plus:
            if (j.contains("reference_set")) {
                for (const auto& r : j.at("reference_set"))
                    spec.reference_set.push_back(vector_from(r));
            } else {
                spec.reference_set = canonical_set(minimal_set(universe));
            }
            break;
        case IndicatorKind::r2: {
            if (j.contains("weight_set")) {
                for (const auto& w : j.at("weight_set"))
                    spec.weight_set.push_back(vector_from(w));
            } else {
                spec.weight_set = uniform_weights(d, j.value("weight_count", 11));
            }
            if (j.contains("utopian_point")) {
                spec.utopian_point = vector_from(j.at("utopian_point"));
            } else {
                spec.utopian_point = universe_ideal(universe);
                for (double& x : spec.utopian_point) x -= 1.0;
            }
            break;
        }
    }
    return spec;
}

inline ArchiverConfig archiver_from_json(const json& j, const SolutionSet& universe,
                                         std::uint64_t default_seed) {
    if (!j.contains("kind")) throw UsageError("archiver needs a kind");
    ArchiverConfig cfg;
    cfg.kind = archiver_kind_from(j.at("kind").get<std::string>());
    if (j.contains("capacity")) cfg.capacity = j.at("capacity").get<std::size_t>();
    else if (cfg.kind != ArchiverKind::unbounded && cfg.kind != ArchiverKind::eps_box)
        throw UsageError(std::string(archiver_kind_name(cfg.kind)) + " needs a capacity");
    cfg.rng_seed = j.value("rng_seed", default_seed);
    cfg.label = j.value("name", std::string());
    const std::size_t d = universe.front().size();

    switch (cfg.kind) {
        case ArchiverKind::eps_box:
            cfg.epsilon = j.value("epsilon", 1.0);
            if (j.value("mode", std::string("pareto")) == "approx")
                cfg.eps_mode = EpsBoxMode::approx;
            break;
        case ArchiverKind::nsga2:
            cfg.batch_native = j.value("batch_native", false);
            break;
        case ArchiverKind::moead: {
            if (j.value("scalarizer", std::string("tch")) == "pbi")
                cfg.scalarizer = Scalarizer::pbi;
            cfg.pbi_theta = j.value("pbi_theta", 5.0);
            if (j.contains("weights"))
                for (const auto& w : j.at("weights")) cfg.weights.push_back(vector_from(w));
            else
                cfg.weights = uniform_weights(d, cfg.capacity);
            if (j.contains("ideal")) cfg.fixed_ideal = vector_from(j.at("ideal"));
            else if (j.value("freeze_ideal", false)) cfg.fixed_ideal = universe_ideal(universe);
            break;
        }
        case ArchiverKind::indicator_mu1:
            if (j.value("ref_policy", std::string("fixed")) == "adaptive_nadir_plus_one")
                cfg.ref_policy = RefPolicy::adaptive_nadir_plus_one;
            if (j.value("tie_policy", std::string("reject_new")) == "uniform_random")
                cfg.tie_policy = TiePolicy::uniform_random;
            cfg.indicator = indicator_from_json(
                j.value("indicator", json{{"kind", "hypervolume"}}), universe);
            break;
        case ArchiverKind::weak_compliant:
            cfg.indicator = indicator_from_json(
                j.value("indicator", json{{"kind", "epsilon_additive"}}), universe);
            break;
        default:
            break;
    }
    cfg.validate(d);
    return cfg;
}

struct ExperimentConfig {
    json raw;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool fail_on_violation = false;
};

inline ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    if (j.value("schema", 0) != 1) throw UsageError("config schema must be 1");
    cfg.raw = j;
    cfg.seed = j.value("seed", 0ull);
    cfg.out_dir = j.value("out", std::string("out"));
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

// Resolve the configured sequence source. Scenario sources also supply
// default archivers when the config lists none.
inline Sequence sequence_from_config(const ExperimentConfig& cfg, Scenario* out_scenario) {
    if (!cfg.raw.contains("sequence")) throw UsageError("config needs a sequence source");
    const json& src = cfg.raw.at("sequence");
    const int sources = src.contains("generator") + src.contains("file") + src.contains("scenario");
    if (sources != 1)
        throw UsageError("sequence source must be exactly one of generator/file/scenario");
    if (src.contains("scenario")) {
        Scenario sc = scenario(src.at("scenario").get<std::string>());
        if (out_scenario) *out_scenario = sc;
        return sc.sequence;
    }
    if (src.contains("file")) return read_sequence(src.at("file").get<std::string>());

    const json& g = src.at("generator");
    FrontSpec spec;
    spec.shape = front_shape_from(g.value("shape", std::string("linear")));
    spec.dimension = g.value("dimension", 2);
    spec.point_count = g.value("points", 20);
    spec.dominated_noise_count = g.value("noise", 0);
    spec.seed = g.value("seed", cfg.seed);
    spec.lattice = g.value("lattice", true);
    const SolutionSet y = sample_ground_set(spec);
    OrderPolicy policy;
    policy.kind = order_kind_from(src.value("order", std::string("shuffle")));
    policy.seed = src.value("order_seed", cfg.seed + 1);
    return order_and_batch(y, policy, src.value("batch_size", 1), src.value("passes", 1));
}

inline json witness_to_json(const Witness& w) {
    json j{{"t", w.t}, {"t2", w.t2}};
    if (!w.offender.empty()) j["offender"] = w.offender;
    if (!w.victim.empty()) j["victim"] = w.victim;
    return j;
}

inline json reports_to_json(const std::vector<ViolationReport>& reports) {
    json j = json::object();
    for (const auto& rep : reports) {
        json wl = json::array();
        for (const auto& w : rep.witnesses) wl.push_back(witness_to_json(w));
        j[property_name(rep.property)] = json{{"count", rep.witnesses.size()},
                                              {"witnesses", std::move(wl)}};
    }
    return j;
}

inline std::size_t total_witnesses(const std::vector<ViolationReport>& reports) {
    std::size_t n = 0;
    for (const auto& rep : reports) n += rep.witnesses.size();
    return n;
}

inline json archiver_summary(const ArchiverConfig& cfg) {
    json j{{"name", cfg.name()},
           {"kind", archiver_kind_name(cfg.kind)},
           {"rng_seed", cfg.rng_seed}};
    if (cfg.capacity != kUnbounded) j["capacity"] = cfg.capacity;
    if (cfg.needs_indicator()) j["indicator"] = indicator_name(cfg.indicator.kind);
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << text;
}

// Archiver configs engaged by `run` and `compare`: from the config's
// archivers array, or the scenario defaults when the array is absent.
inline std::vector<ArchiverConfig> archivers_from_config(const ExperimentConfig& cfg,
                                                         const Sequence& seq,
                                                         const Scenario* sc) {
    std::vector<ArchiverConfig> out;
    const SolutionSet universe = seq.universe();
    if (cfg.raw.contains("archivers")) {
        for (const auto& a : cfg.raw.at("archivers"))
            out.push_back(archiver_from_json(a, universe, cfg.seed));
    } else if (sc && !sc->name.empty()) {
        ArchiverConfig a = sc->archiver;
        a.rng_seed = cfg.seed;
        out.push_back(a);
        if (sc->has_control) {
            ArchiverConfig c = sc->control;
            c.rng_seed = cfg.seed;
            c.label = c.name() + "_control";
            out.push_back(c);
        }
    }
    if (out.empty()) throw UsageError("config needs at least one archiver");
    std::set<std::string> names;
    for (const auto& a : out)
        if (!names.insert(a.name()).second)
            throw UsageError("duplicate archiver name: " + a.name() +
                             " (disambiguate with \"name\")");
    return out;
}

inline std::vector<IndicatorSpec> metrics_from_config(const ExperimentConfig& cfg,
                                                      const SolutionSet& universe) {
    std::vector<IndicatorSpec> metrics;
    if (cfg.raw.contains("metrics")) {
        for (const auto& m : cfg.raw.at("metrics"))
            metrics.push_back(indicator_from_json(m, universe));
    } else {
        metrics.push_back(indicator_from_json(json{{"kind", "hypervolume"}}, universe));
        metrics.push_back(indicator_from_json(json{{"kind", "epsilon_additive"}}, universe));
    }
    for (const auto& m : metrics) m.validate(universe.front().size());
    return metrics;
}

// --- run --------------------------------------------------------------

inline int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    Scenario sc;
    const Sequence seq = sequence_from_config(cfg, &sc);
    const SolutionSet universe = seq.universe();
    const auto archivers = archivers_from_config(cfg, seq, &sc);
    const auto metrics = metrics_from_config(cfg, universe);

    std::set<std::string> checks{"anytime"};
    if (cfg.raw.contains("checks")) {
        checks.clear();
        for (const auto& c : cfg.raw.at("checks")) checks.insert(c.get<std::string>());
    }

    fs::create_directories(cfg.out_dir);
    write_sequence(seq, (fs::path(cfg.out_dir) / "sequence.csv").string());

    std::size_t violations = 0;
    for (const auto& arch_cfg : archivers) {
        const std::string name = arch_cfg.name();
        const Trajectory traj = run_archiver(arch_cfg, seq);
        write_trajectory(traj, (fs::path(cfg.out_dir) / ("trajectory_" + name + ".csv")).string());

        std::ostringstream metrics_csv;
        metrics_csv << "t";
        for (const auto& m : metrics) metrics_csv << "," << indicator_name(m.kind);
        metrics_csv << "\n";
        for (std::size_t t = 1; t < traj.snapshots.size(); ++t) {
            metrics_csv << t;
            for (const auto& m : metrics)
                metrics_csv << ","
                            << detail::render_double(
                                   traj.snapshots[t].empty() ? 0.0 : m.evaluate(traj.snapshots[t]));
            metrics_csv << "\n";
        }
        write_text_file(fs::path(cfg.out_dir) / ("metrics_" + name + ".csv"), metrics_csv.str());

        json report{{"archiver", archiver_summary(arch_cfg)}, {"seed", cfg.seed}};
        if (checks.count("anytime")) {
            const auto reports = check_anytime(traj);
            report["anytime"] = reports_to_json(reports);
            violations += total_witnesses(reports);
        }
        if (checks.count("lemmas") && arch_cfg.kind == ArchiverKind::weak_compliant) {
            const auto reports = check_lemmas(traj, arch_cfg.indicator);
            report["lemmas"] = reports_to_json(reports);
            violations += total_witnesses(reports);
        }
        if (checks.count("limit")) {
            const json& lim = cfg.raw.value("limit", json::object());
            const auto verdict =
                run_limit_experiment(arch_cfg, universe, cfg.seed, lim.value("window", 0),
                                     lim.value("budget", 0));
            report["limit"] = json{{"stabilized", verdict.stabilized},
                                   {"stable_at", verdict.stable_at},
                                   {"is_pareto_subset", verdict.is_pareto_subset},
                                   {"is_optimal", verdict.is_optimal},
                                   {"budget_exhausted", verdict.budget_exhausted}};
        }
        write_text_file(fs::path(cfg.out_dir) / ("report_" + name + ".json"),
                        report.dump(2) + "\n");
        log << "ran " << name << " over " << seq.batches.size() << " batches\n";
    }
    if (violations > 0) {
        log << violations << " violation witness(es) found\n";
        if (cfg.fail_on_violation) return 2;
    }
    return 0;
}

// --- compare ----------------------------------------------------------

inline int cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    Scenario sc;
    const Sequence seq = sequence_from_config(cfg, &sc);
    const SolutionSet universe = seq.universe();
    const auto archivers = archivers_from_config(cfg, seq, &sc);
    if (archivers.size() < 2) throw UsageError("compare needs at least two archivers");
    const auto metrics = metrics_from_config(cfg, universe);

    ArchiverConfig unbounded_cfg;
    unbounded_cfg.kind = ArchiverKind::unbounded;
    const Trajectory unbounded_traj = run_archiver(unbounded_cfg, seq);
    const SolutionSet reference_front = minimal_set(unbounded_traj.snapshots.back());

    json rows = json::array();
    std::ostringstream table;
    table << std::left << std::setw(28) << "archiver";
    for (const auto& m : metrics)
        table << std::right << std::setw(20) << indicator_name(m.kind)
              << std::setw(12) << "ratio";
    table << std::setw(12) << "violations" << "\n";

    std::size_t violations = 0;
    for (const auto& arch_cfg : archivers) {
        const Trajectory traj = run_archiver(arch_cfg, seq);
        const auto reports = check_anytime(traj);
        const std::size_t vio = total_witnesses(reports);
        violations += vio;
        json row{{"archiver", archiver_summary(arch_cfg)}, {"violations", vio}};
        table << std::left << std::setw(28) << arch_cfg.name();
        json vals = json::object();
        for (const auto& m : metrics) {
            const double value = m.evaluate(traj.snapshots.back());
            const double base = m.evaluate(reference_front);
            const double ratio = value == base ? 1.0 : value / base;
            json entry{{"value", value}, {"vs_unbounded", base}};
            entry["ratio"] = std::isfinite(ratio) ? json(ratio) : json();
            vals[indicator_name(m.kind)] = std::move(entry);
            std::string shown = detail::render_double(value);
            if (shown.size() > 19) shown.resize(19);
            table << std::right << std::setw(20) << shown;
            if (std::isfinite(ratio)) {
                std::ostringstream r;
                r << std::fixed << std::setprecision(4) << ratio;
                table << std::setw(12) << r.str();
            } else {
                table << std::setw(12) << "inf";
            }
        }
        row["metrics"] = std::move(vals);
        rows.push_back(std::move(row));
        table << std::setw(12) << vio << "\n";
    }

    json out{{"seed", cfg.seed},
             {"reference_front_size", reference_front.size()},
             {"rows", std::move(rows)}};
    fs::create_directories(cfg.out_dir);
    write_text_file(fs::path(cfg.out_dir) / "compare.json", out.dump(2) + "\n");
    write_text_file(fs::path(cfg.out_dir) / "compare.txt", table.str());
    log << table.str();
    if (violations > 0 && cfg.fail_on_violation) return 2;
    return 0;
}

// --- classify ---------------------------------------------------------

// Desk-scale reproduction of the archiver classification table: anytime
// properties over R random sequences, limit properties over L seeded
// uniform-draw experiments. "violated" always carries a stored witness;
// "held" means no witness at these budgets; conditional entries run
// outside their conditions report "inconclusive" instead of "held".
struct ClassifyBudgets {
    std::size_t sequences = 200;      // R
    std::size_t limit_seeds = 20;     // L
    std::size_t capacity = 5;         // N for bounded rows
    std::size_t max_points = 30;      // |Y| cap for random sequences
    std::size_t limit_points = 20;    // |Y| for limit ground sets
    std::size_t limit_window = 0;     // 0 = default 50|Y|
    std::size_t limit_budget = 0;     // 0 = default 10^4|Y|
};

inline ClassifyBudgets budgets_from_config(const ExperimentConfig& cfg) {
    ClassifyBudgets b;
    const json& j = cfg.raw.value("classify", json::object());
    b.sequences = j.value("sequences", b.sequences);
    b.limit_seeds = j.value("limit_seeds", b.limit_seeds);
    b.capacity = j.value("capacity", b.capacity);
    b.max_points = j.value("max_points", b.max_points);
    b.limit_points = j.value("limit_points", b.limit_points);
    b.limit_window = j.value("limit_window", b.limit_window);
    b.limit_budget = j.value("limit_budget", b.limit_budget);
    return b;
}

// Row descriptors for the built-in classification suite. Indicator
// configuration is resolved against each sequence's own universe.
inline std::vector<json> default_classify_rows(std::size_t capacity) {
    const auto n = static_cast<std::int64_t>(capacity);
    return {
        json{{"kind", "unbounded"}, {"name", "unbounded"}},
        json{{"kind", "nsga2"}, {"capacity", n}, {"name", "nsga2"}},
        json{{"kind", "a_dom"}, {"capacity", n}, {"name", "a_dom"}},
        json{{"kind", "eps_box"}, {"mode", "pareto"}, {"epsilon", 1.0}, {"name", "eps_pareto"}},
        json{{"kind", "eps_box"}, {"mode", "approx"}, {"epsilon", 1.0}, {"name", "eps_approx"}},
        json{{"kind", "moead"}, {"capacity", n}, {"scalarizer", "tch"}, {"freeze_ideal", true},
             {"name", "moead_tch_frozen"}},
        json{{"kind", "moead"}, {"capacity", n}, {"scalarizer", "pbi"}, {"name", "moead_pbi"}},
        json{{"kind", "indicator_mu1"}, {"capacity", n},
             {"indicator", json{{"kind", "hypervolume"}}}, {"ref_policy", "fixed"},
             {"name", "a_hv_fixed"}},
        json{{"kind", "indicator_mu1"}, {"capacity", n},
             {"indicator", json{{"kind", "hypervolume"}}},
             {"ref_policy", "adaptive_nadir_plus_one"}, {"name", "sms_hv_adaptive"}},
        json{{"kind", "indicator_mu1"}, {"capacity", n}, {"indicator", json{{"kind", "r2"}}},
             {"name", "a_r2"}},
        json{{"kind", "mga"}, {"capacity", n}, {"name", "mga"}},
        json{{"kind", "weak_compliant"}, {"capacity", n},
             {"indicator", json{{"kind", "epsilon_additive"}}}, {"name", "weak_eps"}},
        json{{"kind", "weak_compliant"}, {"capacity", n},
             {"indicator", json{{"kind", "igd_plus"}}}, {"name", "weak_igd_plus"}},
        json{{"kind", "weak_compliant"}, {"capacity", n}, {"indicator", json{{"kind", "r2"}}},
             {"name", "weak_r2"}},
    };
}

// Anytime properties whose guarantees are conditional and whose condition
// the given configuration does not meet; absence of witnesses for these
// reports "inconclusive" rather than "held".
inline std::set<PropertyKind> unmet_conditions(const json& row) {
    std::set<PropertyKind> out;
    const std::string kind = row.value("kind", std::string());
    if (kind == "moead" && row.value("scalarizer", std::string("tch")) == "tch" &&
        !row.value("freeze_ideal", false) && !row.contains("ideal")) {
        out.insert(PropertyKind::point_monotone);
        out.insert(PropertyKind::set_monotone);
    }
    if (kind == "indicator_mu1" &&
        row.value("ref_policy", std::string("fixed")) == "adaptive_nadir_plus_one")
        out.insert(PropertyKind::set_monotone);
    return out;
}

// The limit guarantees of these configurations are likewise conditional:
// an adaptive reference point or random tie handling may cycle.
inline bool limit_conditional(const json& row) {
    if (row.value("ref_policy", std::string()) == "adaptive_nadir_plus_one") return true;
    if (row.value("tie_policy", std::string()) == "uniform_random") return true;
    return false;
}

// The sequence mix the anytime phase sweeps: shapes, orders, dimensions,
// batch sizes, and noise all cycle deterministically under the master seed.
inline Sequence classify_sequence(std::size_t index, std::uint64_t master_seed,
                                  const ClassifyBudgets& budgets) {
    std::mt19937_64 rng(master_seed * 7919 + index);
    FrontSpec spec;
    const FrontShape shapes[] = {FrontShape::linear, FrontShape::concave, FrontShape::convex,
                                 FrontShape::disconnected, FrontShape::degenerate};
    spec.shape = shapes[index % 5];
    spec.dimension = (index % 2 == 0) ? 2 : 3;
    if (spec.shape == FrontShape::degenerate) spec.dimension = 3;
    const std::size_t lo = 8;
    spec.point_count = lo + detail::bounded(rng, budgets.max_points - lo - 4);
    spec.dominated_noise_count = detail::bounded(rng, 6);
    spec.seed = rng();
    spec.lattice = true;
    const SolutionSet y = sample_ground_set(spec);
    OrderPolicy policy;
    const OrderKind orders[] = {OrderKind::shuffle, OrderKind::shuffle,
                                OrderKind::lexicographic_sweep, OrderKind::extremes_first};
    policy.kind = orders[index % 4];
    policy.seed = rng();
    const std::size_t batch_size = (index % 4 == 3) ? 5 : 1;
    return order_and_batch(y, policy, batch_size, 2);
}

// A sequence on which the PBI scalarizer provably point-deteriorates: the
// weight ray prefers (5,3) over the dominating (5,1) it replaces.
inline Sequence crafted_pbi_sequence() {
    return one_at_a_time({{1, 7}, {5, 1}, {5, 3}});
}

inline json crafted_pbi_row(std::size_t) {
    return json{{"kind", "moead"}, {"capacity", 1}, {"scalarizer", "pbi"},
                {"weights", json::array({json::array({0.5, 0.5})})}, {"name", "moead_pbi"}};
}

struct ClassifyCellResult {
    std::string verdict;   // held / violated / inconclusive
    json detail;
};

inline int cmd_classify(const ExperimentConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    const ClassifyBudgets budgets = budgets_from_config(cfg);
    std::vector<json> rows;
    if (cfg.raw.contains("archivers"))
        for (const auto& a : cfg.raw.at("archivers")) rows.push_back(a);
    else
        rows = default_classify_rows(budgets.capacity);

    const PropertyKind anytime_props[] = {PropertyKind::pareto_subset,
                                          PropertyKind::point_monotone,
                                          PropertyKind::set_monotone};

    // anytime phase: shared sequence pool
    std::vector<Sequence> sequences;
    for (std::size_t i = 0; i < budgets.sequences; ++i)
        sequences.push_back(classify_sequence(i, cfg.seed, budgets));

    json matrix = json::array();
    std::ostringstream table;
    table << std::left << std::setw(18) << "archiver";
    for (auto p : anytime_props) table << std::setw(16) << property_name(p);
    for (const char* p : {"limit_stable", "limit_pareto", "limit_optimal"})
        table << std::setw(16) << p;
    table << "\n";

    for (const auto& row : rows) {
        const std::string row_name = row.value("name", row.value("kind", std::string("?")));
        const auto conditions = unmet_conditions(row);
        std::map<PropertyKind, ClassifyCellResult> cells;
        for (auto p : anytime_props) cells[p] = {"held", json::object()};

        auto scan_sequence = [&](const Sequence& seq, const json& row_json, long seq_id) {
            const SolutionSet universe = seq.universe();
            ArchiverConfig arch_cfg = archiver_from_json(row_json, universe, cfg.seed + seq_id);
            const Trajectory traj = run_archiver(arch_cfg, seq);
            AnytimeOptions opt;
            opt.max_witnesses_per_property = 1;
            const auto reports = check_anytime(traj, opt);
            for (auto p : anytime_props) {
                const auto rep = find_report(reports, p);
                if (!rep.clean() && cells[p].verdict != "violated") {
                    cells[p].verdict = "violated";
                    cells[p].detail = json{{"sequence", seq_id},
                                           {"witness", witness_to_json(rep.witnesses[0])}};
                }
            }
        };
        for (std::size_t i = 0; i < sequences.size(); ++i)
            scan_sequence(sequences[i], row, static_cast<long>(i));
        // the PBI row additionally runs its crafted counterexample
        if (row.value("kind", std::string()) == "moead" &&
            row.value("scalarizer", std::string()) == "pbi")
            scan_sequence(crafted_pbi_sequence(), crafted_pbi_row(budgets.capacity), -1);

        for (auto p : anytime_props)
            if (cells[p].verdict == "held" && conditions.count(p))
                cells[p].verdict = "inconclusive";

        // limit phase
        std::size_t stabilized = 0, pareto_ok = 0, optimal_ok = 0, exhausted = 0;
        for (std::size_t s = 0; s < budgets.limit_seeds; ++s) {
            std::mt19937_64 rng(cfg.seed * 104729 + s);
            const std::size_t d = (s % 2 == 0) ? 2 : 3;
            SolutionSet y;
            while (y.size() < budgets.limit_points) {
                ObjectiveVector v(d);
                for (auto& x : v)
                    x = 1.0 + static_cast<double>(detail::bounded(rng, 30));
                if (!contains(y, v)) y.push_back(std::move(v));
            }
            ArchiverConfig arch_cfg = archiver_from_json(row, y, cfg.seed + 1000 + s);
            const auto verdict = run_limit_experiment(arch_cfg, y, rng(), budgets.limit_window,
                                                      budgets.limit_budget);
            stabilized += verdict.stabilized;
            exhausted += verdict.budget_exhausted;
            pareto_ok += verdict.stabilized && verdict.is_pareto_subset;
            optimal_ok += verdict.stabilized && verdict.is_optimal;
        }
        const bool limit_cond = limit_conditional(row);
        const std::size_t L = budgets.limit_seeds;
        auto limit_verdict = [&](std::size_t ok) {
            if (ok == L && exhausted == 0 && !limit_cond) return std::string("held");
            return std::string("inconclusive");
        };
        json row_json{{"archiver", row_name},
                      {"limit", json{{"stabilized", stabilized},
                                     {"budget_exhausted", exhausted},
                                     {"pareto_subset_ok", pareto_ok},
                                     {"optimal_ok", optimal_ok},
                                     {"seeds", L}}}};

        table << std::left << std::setw(18) << row_name;
        for (auto p : anytime_props) {
            row_json[property_name(p)] =
                json{{"verdict", cells[p].verdict}, {"detail", cells[p].detail}};
            table << std::setw(16) << cells[p].verdict;
        }
        const std::string lim_stable = limit_verdict(stabilized);
        const std::string lim_pareto = limit_verdict(pareto_ok);
        const std::string lim_optimal = limit_verdict(optimal_ok);
        row_json["limit_stable"] = lim_stable;
        row_json["limit_pareto_subset"] = lim_pareto;
        row_json["limit_optimal"] = lim_optimal;
        table << std::setw(16) << lim_stable << std::setw(16) << lim_pareto
              << std::setw(16) << lim_optimal << "\n";
        matrix.push_back(std::move(row_json));
        log << "classified " << row_name << "\n";
    }

    json out{{"seed", cfg.seed},
             {"budgets", json{{"sequences", budgets.sequences},
                              {"limit_seeds", budgets.limit_seeds},
                              {"capacity", budgets.capacity}}},
             {"matrix", std::move(matrix)}};
    fs::create_directories(cfg.out_dir);
    write_text_file(fs::path(cfg.out_dir) / "classify.json", out.dump(2) + "\n");
    write_text_file(fs::path(cfg.out_dir) / "classify.txt", table.str());
    log << table.str();
    return 0;
}

}  // namespace exp
}  // namespace moa
