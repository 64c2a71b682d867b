#include "vhalab/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

#include "vhalab/errors.hpp"
#include "vhalab/rng.hpp"

namespace vhalab {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, res.ptr);
}

void ScenarioOptions::merge_from(const ScenarioOptions& higher) {
    if (higher.scenario) scenario = higher.scenario;
    if (higher.sites) sites = higher.sites;
    if (higher.reps) reps = higher.reps;
    if (higher.methods) methods = higher.methods;
    if (higher.shots) shots = higher.shots;
    if (higher.gammas) gammas = higher.gammas;
    if (higher.eta) eta = higher.eta;
    if (higher.iterations) iterations = higher.iterations;
    if (higher.runs) runs = higher.runs;
    if (higher.seed) seed = higher.seed;
    if (higher.theta0) theta0 = higher.theta0;
    if (higher.out) out = higher.out;
}

namespace {

int json_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<int>();
}

double json_double(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t json_u64(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError("config key '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string json_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string())
        throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

GradientMethod parse_method_or_throw(const std::string& text) {
    try {
        return GradientMethod::parse(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> json_double_list(const nlohmann::json& v, const std::string& key) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
        return out;
    }
    if (!v.is_array())
        throw ConfigError("config key '" + key + "' must be a number or an array of numbers");
    for (const auto& item : v) out.push_back(json_double(item, key));
    return out;
}

} // namespace

ScenarioOptions parse_scenario_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    ScenarioOptions opt;
    for (const auto& [key, value] : doc.items()) {
        if (key == "scenario") {
            opt.scenario = json_string(value, key);
        } else if (key == "sites") {
            opt.sites = json_int(value, key);
        } else if (key == "reps") {
            opt.reps = json_int(value, key);
        } else if (key == "method") {
            std::vector<GradientMethod> methods;
            if (value.is_string()) {
                methods.push_back(parse_method_or_throw(value.get<std::string>()));
            } else if (value.is_array()) {
                for (const auto& item : value)
                    methods.push_back(parse_method_or_throw(json_string(item, key)));
            } else {
                throw ConfigError("config key 'method' must be a string or an array of strings");
            }
            opt.methods = std::move(methods);
        } else if (key == "shots") {
            opt.shots = json_u64(value, key);
        } else if (key == "gamma") {
            opt.gammas = json_double_list(value, key);
        } else if (key == "eta") {
            opt.eta = json_double(value, key);
        } else if (key == "iterations") {
            opt.iterations = json_int(value, key);
        } else if (key == "runs") {
            opt.runs = json_int(value, key);
        } else if (key == "seed") {
            opt.seed = json_u64(value, key);
        } else if (key == "theta0") {
            if (!value.is_array())
                throw ConfigError("config key 'theta0' must be an array of numbers");
            std::vector<double> theta0;
            for (const auto& item : value) theta0.push_back(json_double(item, key));
            opt.theta0 = std::move(theta0);
        } else if (key == "out") {
            opt.out = json_string(value, key);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return opt;
}

namespace {

std::vector<GradientMethod> default_methods(ScenarioKind kind, int sites) {
    std::vector<double> eps;
    if (kind == ScenarioKind::Simple) {
        eps = {0.2, 0.05, 0.02};
    } else if (sites == 6) {
        eps = {0.1, 0.05, 0.01};
    } else {
        eps = {0.5, 0.2, 0.05};
    }
    std::vector<GradientMethod> methods;
    for (double e : eps) methods.push_back(GradientMethod::fd(e));
    methods.push_back(GradientMethod::ps());
    return methods;
}

int parts_per_repetition_for(ScenarioKind kind, int sites) {
    if (kind == ScenarioKind::Simple) return 1;
    return sites == 2 ? 2 : 3;
}

} // namespace

Scenario resolve_scenario(const ScenarioOptions& options) {
    Scenario s;
    if (!options.scenario)
        throw ConfigError("no scenario selected; set --scenario simple or --scenario hubbard");
    if (*options.scenario == "simple") {
        s.kind = ScenarioKind::Simple;
    } else if (*options.scenario == "hubbard") {
        s.kind = ScenarioKind::Hubbard;
    } else {
        throw ConfigError("unknown scenario '" + *options.scenario + "'; expected simple or hubbard");
    }

    if (s.kind == ScenarioKind::Simple) {
        if (options.sites)
            throw ConfigError("--sites applies to the hubbard scenario only");
        s.sites = 0;
        s.reps = options.reps.value_or(1);
        if (s.reps != 1)
            throw ConfigError("the simple scenario has a single parameter; --reps must be 1");
        s.eta = options.eta.value_or(0.5);
    } else {
        s.sites = options.sites.value_or(2);
        if (s.sites != 2 && s.sites != 4 && s.sites != 6)
            throw ConfigError("--sites must be 2, 4, or 6");
        s.reps = options.reps.value_or(s.sites == 6 ? 2 : 1);
        if (s.reps < 1) throw ConfigError("--reps must be at least 1");
        s.eta = options.eta.value_or(s.sites == 6 ? 0.03 : 0.1);
    }
    if (!(s.eta > 0.0) || !std::isfinite(s.eta))
        throw ConfigError("--eta must be positive and finite");

    s.methods = options.methods.value_or(default_methods(s.kind, s.sites));
    if (s.methods.empty()) throw ConfigError("at least one --method is required");

    s.shots = options.shots.value_or(50000);
    if (s.shots < 1) throw ConfigError("--shots must be at least 1");

    s.gammas = options.gammas.value_or(std::vector<double>{0.0});
    if (s.gammas.empty()) throw ConfigError("at least one --gamma is required");
    for (double g : s.gammas)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw ConfigError("--gamma values must be finite and non-negative");

    s.iterations = options.iterations.value_or(50);
    if (s.iterations < 1) throw ConfigError("--iterations must be at least 1");

    s.runs_per_noisy_config = options.runs.value_or(5);
    if (s.runs_per_noisy_config < 1) throw ConfigError("--runs must be at least 1");

    s.base_seed = options.seed.value_or(s.base_seed);

    if (options.theta0) {
        const int expected = parts_per_repetition_for(s.kind, s.sites) * s.reps;
        if (static_cast<int>(options.theta0->size()) != expected)
            throw ConfigError("--theta0 needs " + std::to_string(expected) +
                              " entries for this scenario, got " +
                              std::to_string(options.theta0->size()));
        for (double v : *options.theta0)
            if (!std::isfinite(v)) throw ConfigError("--theta0 entries must be finite");
        s.theta0 = *options.theta0;
    }

    s.out_dir = options.out.value_or("results");
    if (s.out_dir.empty()) throw ConfigError("--out must not be empty");

    // Reject duplicate (method, gamma) cells up front; they would map
    // to the same output directory.
    std::set<std::string> seen;
    for (const auto& m : s.methods)
        for (double g : s.gammas)
            if (!seen.insert(m.label() + "|" + format_double(g)).second)
                throw ConfigError("duplicate (method, gamma) cell: " + m.label() +
                                  ", gamma=" + format_double(g));
    return s;
}

ScenarioSetup build_simple_scenario() {
    ScenarioSetup setup;
    setup.name = "simple";

    auto [circuit, flat] = schedule_with_map(1, {Gate::h(0), Gate::rz(0, 0.0)});
    CompiledAnsatz compiled;
    compiled.circuit = std::move(circuit);
    compiled.bindings = {ParamBinding{flat[1], 0, 1.0}};
    compiled.parts_per_repetition = 1;
    compiled.repetitions = 1;
    PauliString half_z;
    half_z.coefficient = -0.5;
    half_z.factors = {{0, PauliAxis::Z}};
    compiled.generators = {{"simple", {half_z}}};
    setup.compiled = std::move(compiled);

    PauliString x0;
    x0.factors = {{0, PauliAxis::X}};
    setup.hamiltonian.add(x0);

    setup.initial = basis_state(1, "0");
    setup.e_ref = -1.0;
    setup.e_ground = -1.0;
    return setup;
}

ScenarioSetup build_hubbard_scenario(int sites, int reps, const ReferenceOptions& ref_options) {
    ScenarioSetup setup;
    setup.name = "hubbard";

    HubbardSpec spec = HubbardSpec::half_filled(sites);
    HamiltonianDecomposition decomp = build_hubbard(spec);
    setup.compiled = compile(VhaAnsatz{decomp, reps});
    setup.hamiltonian = decomp.total();
    setup.initial = noninteracting_ground_state(spec);
    setup.e_ground = exact_ground_energy(decomp, spec.filling_per_spin, spec.filling_per_spin);
    // The 2-site trial state reaches the exact ground energy, which is
    // therefore the deviation reference; larger rings deviate from the
    // best energy the trial state itself can reach.
    setup.e_ref = sites == 2 ? setup.e_ground
                             : ansatz_optimal_energy(setup.compiled, setup.hamiltonian,
                                                     setup.initial, ref_options);
    return setup;
}

EnergyEvaluator make_evaluator(const ScenarioSetup& setup, Backend backend, std::uint64_t seed) {
    return EnergyEvaluator(setup.compiled, setup.hamiltonian, setup.initial, backend, seed);
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, const GradientMethod& method,
                              double gamma, int run_index) {
    const std::string tag = method.label() + "|gamma=" + format_double(gamma) +
                            "|run=" + std::to_string(run_index);
    return base_seed + stable_hash(tag);
}

namespace {

std::string method_dir_component(const GradientMethod& method) {
    if (method.kind == GradientMethod::Kind::ParameterShift) return "ps";
    return "fd" + format_double(method.epsilon);
}

std::string cell_directory_name(const GradientMethod& method, double gamma) {
    return method_dir_component(method) + "__gamma" + format_double(gamma);
}

std::string theta_json_field(const std::vector<double>& theta) {
    std::string out = "\"[";
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (i) out += ',';
        out += format_double(theta[i]);
    }
    out += "]\"";
    return out;
}

constexpr const char* kCsvHeader =
    "scenario,method,epsilon,shots,gamma,seed,iteration,theta_json,energy,"
    "abs_dev,rel_dev,exact_energy_at_theta,cum_circuit_evals\n";

void append_run_rows(std::string& csv, const std::string& scenario_name,
                     const GradientMethod& method, const RunRecord& record,
                     bool sampled, std::uint64_t shots, double gamma, std::uint64_t seed) {
    const std::string eps_field = method.kind == GradientMethod::Kind::FiniteDifference
                                      ? format_double(method.epsilon)
                                      : std::string();
    const std::string shots_field = sampled ? std::to_string(shots) : std::string();
    const std::string gamma_field = sampled ? format_double(gamma) : std::string();
    const std::string seed_field = sampled ? std::to_string(seed) : std::string();
    for (const IterationRow& row : record.rows) {
        csv += scenario_name;
        csv += ',';
        csv += method.label();
        csv += ',';
        csv += eps_field;
        csv += ',';
        csv += shots_field;
        csv += ',';
        csv += gamma_field;
        csv += ',';
        csv += seed_field;
        csv += ',';
        csv += std::to_string(row.iteration);
        csv += ',';
        csv += theta_json_field(row.theta);
        csv += ',';
        csv += format_double(row.energy);
        csv += ',';
        csv += format_double(row.abs_dev);
        csv += ',';
        csv += format_double(row.rel_dev);
        csv += ',';
        if (row.exact_energy) csv += format_double(*row.exact_energy);
        csv += ',';
        csv += std::to_string(row.cum_circuit_evals);
        csv += '\n';
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string envelope_csv(const std::vector<RunRecord>& runs) {
    std::string csv = "iteration,min_abs_dev,max_abs_dev,min_rel_dev,max_rel_dev\n";
    const std::size_t rows = runs.front().rows.size();
    for (std::size_t i = 0; i < rows; ++i) {
        double min_abs = runs[0].rows[i].abs_dev, max_abs = min_abs;
        double min_rel = runs[0].rows[i].rel_dev, max_rel = min_rel;
        for (const RunRecord& run : runs) {
            min_abs = std::min(min_abs, run.rows[i].abs_dev);
            max_abs = std::max(max_abs, run.rows[i].abs_dev);
            min_rel = std::min(min_rel, run.rows[i].rel_dev);
            max_rel = std::max(max_rel, run.rows[i].rel_dev);
        }
        csv += std::to_string(runs[0].rows[i].iteration);
        csv += ',';
        csv += format_double(min_abs);
        csv += ',';
        csv += format_double(max_abs);
        csv += ',';
        csv += format_double(min_rel);
        csv += ',';
        csv += format_double(max_rel);
        csv += '\n';
    }
    return csv;
}

} // namespace

SuiteResult run_suite(const Scenario& scenario) {
    const int n_qubits = scenario.kind == ScenarioKind::Simple ? 1 : 2 * scenario.sites;
    const bool wants_noise =
        std::any_of(scenario.gammas.begin(), scenario.gammas.end(), [](double g) { return g > 0.0; });
    if (wants_noise && n_qubits > density_matrix_cap())
        throw ConfigError("gamma > 0 needs the density-matrix backend, and " +
                          std::to_string(n_qubits) + " qubits exceed its cap of " +
                          std::to_string(density_matrix_cap()) +
                          "; set VHA_LAB_DENSITY_CAP to raise the cap");

    const ScenarioSetup setup = scenario.kind == ScenarioKind::Simple
                                    ? build_simple_scenario()
                                    : build_hubbard_scenario(scenario.sites, scenario.reps);

    std::vector<double> theta0 = scenario.theta0;
    if (theta0.empty()) {
        theta0 = scenario.kind == ScenarioKind::Simple
                     ? std::vector<double>{2.0}
                     : std::vector<double>(setup.compiled.parameter_count(), 0.1);
    }
    if (static_cast<int>(theta0.size()) != setup.compiled.parameter_count())
        throw ConfigError("theta0 needs " + std::to_string(setup.compiled.parameter_count()) +
                          " entries, got " + std::to_string(theta0.size()));

    const fs::path scenario_dir = fs::path(scenario.out_dir) / setup.name;
    fs::create_directories(scenario_dir);

    SuiteResult result;
    result.scenario_dir = scenario_dir.string();
    result.e_ref = setup.e_ref;
    result.e_ground = setup.e_ground;

    for (double gamma : scenario.gammas) {
        for (const GradientMethod& method : scenario.methods) {
            CellStatus cell;
            cell.method_label = method.label();
            cell.gamma = gamma;
            cell.directory = cell_directory_name(method, gamma);

            const fs::path cell_dir = scenario_dir / cell.directory;
            const fs::path envelope_path = cell_dir / "envelope.csv";
            try {
                fs::create_directories(cell_dir);
                fs::remove(envelope_path); // stale envelopes must not survive a failed rerun

                DescentConfig config;
                config.eta = scenario.eta;
                config.iterations = scenario.iterations;
                config.method = method;
                config.theta0 = theta0;

                std::string csv = kCsvHeader;

                EnergyEvaluator exact_ev = make_evaluator(setup, Backend::pure_exact());
                const RunRecord reference = run_descent(exact_ev, config, setup.e_ref);
                append_run_rows(csv, setup.name, method, reference, false, 0, 0.0, 0);

                std::vector<RunRecord> sampled_runs;
                for (int r = 0; r < scenario.runs_per_noisy_config; ++r) {
                    const std::uint64_t seed = derive_run_seed(scenario.base_seed, method, gamma, r);
                    cell.seeds.push_back(seed);
                    const Backend backend =
                        gamma > 0.0
                            ? Backend::noisy_sampled(scenario.shots, NoiseModel::from_gamma(gamma))
                            : Backend::pure_sampled(scenario.shots);
                    EnergyEvaluator ev = make_evaluator(setup, backend, seed);
                    sampled_runs.push_back(run_descent(ev, config, setup.e_ref));
                    append_run_rows(csv, setup.name, method, sampled_runs.back(), true,
                                    scenario.shots, gamma, seed);
                }
                write_text_file(cell_dir / "runs.csv", csv);

                std::string aborts;
                if (reference.aborted)
                    aborts = "reference run aborted: " + reference.abort_reason;
                for (int r = 0; r < scenario.runs_per_noisy_config; ++r) {
                    if (!sampled_runs[static_cast<std::size_t>(r)].aborted) continue;
                    if (!aborts.empty()) aborts += "; ";
                    aborts += "run " + std::to_string(r) +
                              " aborted: " + sampled_runs[static_cast<std::size_t>(r)].abort_reason;
                }
                if (aborts.empty()) {
                    write_text_file(envelope_path, envelope_csv(sampled_runs));
                    cell.ok = true;
                } else {
                    cell.error = aborts;
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            result.cells.push_back(std::move(cell));
        }
    }

    nlohmann::ordered_json manifest;
    manifest["scenario"] = setup.name;
    if (scenario.kind == ScenarioKind::Hubbard) manifest["sites"] = scenario.sites;
    manifest["reps"] = scenario.reps;
    nlohmann::ordered_json method_labels = nlohmann::ordered_json::array();
    for (const auto& m : scenario.methods) method_labels.push_back(m.label());
    manifest["methods"] = std::move(method_labels);
    manifest["shots"] = scenario.shots;
    manifest["gamma"] = scenario.gammas;
    manifest["eta"] = scenario.eta;
    manifest["iterations"] = scenario.iterations;
    manifest["runs_per_noisy_config"] = scenario.runs_per_noisy_config;
    manifest["base_seed"] = scenario.base_seed;
    manifest["theta0"] = theta0;
    manifest["out"] = scenario.out_dir;
    manifest["density_cap"] = density_matrix_cap();
    manifest["e_ref"] = setup.e_ref;
    manifest["e_ground"] = setup.e_ground;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const CellStatus& cell : result.cells) {
        nlohmann::ordered_json entry;
        entry["method"] = cell.method_label;
        entry["gamma"] = cell.gamma;
        entry["directory"] = cell.directory;
        entry["status"] = cell.ok ? "ok" : "failed";
        if (!cell.ok) entry["error"] = cell.error;
        entry["seeds"] = cell.seeds;
        cells.push_back(std::move(entry));
    }
    manifest["cells"] = std::move(cells);

    const fs::path manifest_path = scenario_dir / "manifest.json";
    write_text_file(manifest_path, manifest.dump(2) + "\n");
    result.manifest_path = manifest_path.string();

    result.exit_code =
        std::all_of(result.cells.begin(), result.cells.end(), [](const CellStatus& c) { return c.ok; })
            ? 0
            : 2;
    return result;
}

} // namespace vhalab
