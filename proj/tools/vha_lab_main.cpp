// vha_lab: runs gradient-descent experiment grids for the one-qubit
// toy circuit and Hubbard-ring trial states, comparing finite-difference
// and parameter-shift gradients under shot noise and depolarization.
//
// Exit codes: 0 full success, 1 configuration error, 2 some cells failed.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vhalab/ansatz.hpp"
#include "vhalab/errors.hpp"
#include "vhalab/experiment.hpp"
#include "vhalab/hubbard.hpp"

namespace {

std::vector<double> parse_comma_doubles(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            values.push_back(v);
        } catch (const std::exception&) {
            throw vhalab::ConfigError("--theta0 expects a comma-separated list of numbers, got '" +
                                      item + "'");
        }
    }
    if (values.empty()) throw vhalab::ConfigError("--theta0 must not be empty");
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vhalab::ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int dump_circuit(const vhalab::Scenario& scenario) {
    vhalab::CompiledAnsatz compiled;
    if (scenario.kind == vhalab::ScenarioKind::Simple) {
        compiled = vhalab::build_simple_scenario().compiled;
    } else {
        auto spec = vhalab::HubbardSpec::half_filled(scenario.sites);
        compiled = vhalab::compile(vhalab::VhaAnsatz{vhalab::build_hubbard(spec), scenario.reps});
    }
    std::cout << vhalab::circuit_template_json(compiled) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-synthesis laboratory: finite-difference vs parameter-shift "
                 "descent on a one-qubit toy circuit and 1D Hubbard rings"};

    std::string scenario_name;
    int sites = 0;
    int reps = 0;
    std::vector<std::string> method_texts;
    std::uint64_t shots = 0;
    std::vector<double> gammas;
    double eta = 0.0;
    int iterations = 0;
    int runs = 0;
    std::uint64_t seed = 0;
    std::string theta0_text;
    std::string out_dir;
    std::string config_path;
    bool want_dump = false;

    app.add_option("--scenario", scenario_name, "Scenario kind: simple or hubbard");
    app.add_option("--sites", sites, "Hubbard ring size M (2, 4, or 6)");
    app.add_option("--reps", reps, "Ansatz repetitions R");
    app.add_option("--method", method_texts,
                   "Gradient method, repeatable: fd:<eps> or ps (default grid per scenario)");
    app.add_option("--shots", shots, "Measurement shots per sampled estimate (default 50000)");
    app.add_option("--gamma", gammas,
                   "Depolarization rate, repeatable; 0 runs the shot-noise-only backend");
    app.add_option("--eta", eta, "Learning rate (default per scenario)");
    app.add_option("--iterations", iterations, "Descent iterations per run (default 50)");
    app.add_option("--runs", runs, "Sampled runs per (method, gamma) cell (default 5)");
    app.add_option("--seed", seed, "Base seed for the per-run seed derivation");
    app.add_option("--theta0", theta0_text, "Initial parameters as a comma list");
    app.add_option("--out", out_dir, "Output directory root (default results)");
    app.add_option("--config", config_path,
                   "JSON config file; command-line flags override its keys");
    app.add_flag("--dump-circuit", want_dump,
                 "Print the compiled circuit template as JSON and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        vhalab::ScenarioOptions options;
        if (!config_path.empty())
            options = vhalab::parse_scenario_json(read_file(config_path));

        vhalab::ScenarioOptions flags;
        if (app.count("--scenario")) flags.scenario = scenario_name;
        if (app.count("--sites")) flags.sites = sites;
        if (app.count("--reps")) flags.reps = reps;
        if (app.count("--method")) {
            std::vector<vhalab::GradientMethod> methods;
            for (const auto& text : method_texts) {
                try {
                    methods.push_back(vhalab::GradientMethod::parse(text));
                } catch (const std::invalid_argument& e) {
                    throw vhalab::ConfigError(e.what());
                }
            }
            flags.methods = std::move(methods);
        }
        if (app.count("--shots")) flags.shots = shots;
        if (app.count("--gamma")) flags.gammas = gammas;
        if (app.count("--eta")) flags.eta = eta;
        if (app.count("--iterations")) flags.iterations = iterations;
        if (app.count("--runs")) flags.runs = runs;
        if (app.count("--seed")) flags.seed = seed;
        if (app.count("--theta0")) flags.theta0 = parse_comma_doubles(theta0_text);
        if (app.count("--out")) flags.out = out_dir;
        options.merge_from(flags);

        const vhalab::Scenario scenario = vhalab::resolve_scenario(options);
        if (want_dump) return dump_circuit(scenario);

        const vhalab::SuiteResult result = vhalab::run_suite(scenario);
        std::cout << "scenario dir: " << result.scenario_dir << '\n'
                  << "e_ref: " << vhalab::format_double(result.e_ref)
                  << "  e_ground: " << vhalab::format_double(result.e_ground) << '\n';
        for (const auto& cell : result.cells) {
            std::cout << (cell.ok ? "ok    " : "failed") << ' ' << cell.directory;
            if (!cell.ok) std::cout << "  (" << cell.error << ')';
            std::cout << '\n';
        }
        std::cout << "manifest: " << result.manifest_path << '\n';
        return result.exit_code;
    } catch (const vhalab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
