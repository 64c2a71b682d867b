#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhalab/descent.hpp"
#include "vhalab/evaluator.hpp"
#include "vhalab/gradient.hpp"
#include "vhalab/reference.hpp"

namespace vhalab {

// Shortest round-trip decimal form (std::to_chars); used everywhere a
// float becomes text so outputs are byte-for-byte reproducible.
std::string format_double(double value);

enum class ScenarioKind : unsigned char { Simple, Hubbard };

// Fully resolved experiment grid.
struct Scenario {
    ScenarioKind kind = ScenarioKind::Simple;
    int sites = 0; // Hubbard only
    int reps = 1;
    std::vector<GradientMethod> methods;
    std::uint64_t shots = 50000;
    std::vector<double> gammas{0.0}; // 0 runs the shot-noise-only backend
    double eta = 0.5;
    int iterations = 50;
    int runs_per_noisy_config = 5;
    std::uint64_t base_seed = 20240501;
    std::vector<double> theta0; // empty picks the scenario default
    std::string out_dir = "results";
};

// Partially specified scenario, as collected from a config file and
// command-line flags.  Unset fields fall back to the scenario's
// defaults in resolve_scenario.
struct ScenarioOptions {
    std::optional<std::string> scenario;
    std::optional<int> sites;
    std::optional<int> reps;
    std::optional<std::vector<GradientMethod>> methods;
    std::optional<std::uint64_t> shots;
    std::optional<std::vector<double>> gammas;
    std::optional<double> eta;
    std::optional<int> iterations;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> theta0;
    std::optional<std::string> out;

    // Fields set in `higher` win.
    void merge_from(const ScenarioOptions& higher);
};

// Reads a JSON config document (same keys as the CLI flags).  Unknown
// keys are a ConfigError.
ScenarioOptions parse_scenario_json(const std::string& text);

// Applies per-scenario defaults (method grids, learning rates, shot
// counts) and validates ranges.  Throws ConfigError on bad input.
Scenario resolve_scenario(const ScenarioOptions& options);

// Everything needed to evaluate one scenario's energies.
struct ScenarioSetup {
    std::string name; // "simple" or "hubbard"
    CompiledAnsatz compiled;
    PauliSum hamiltonian;
    StateVector initial;
    double e_ref = 0.0;    // deviation reference for descent records
    double e_ground = 0.0; // exact ground energy (diagonalization; -1 for simple)
};

// H then RZ(theta) on one qubit, observable X, reference energy -1.
ScenarioSetup build_simple_scenario();

// Periodic half-filled Hubbard ring with U = t = 1.  E_ref is the
// sector diagonalization for 2 sites and the ansatz-optimal energy for
// larger rings.
ScenarioSetup build_hubbard_scenario(int sites, int reps,
                                     const ReferenceOptions& ref_options = {});

EnergyEvaluator make_evaluator(const ScenarioSetup& setup, Backend backend,
                               std::uint64_t seed = 0);

// Deterministic per-run seed: base + FNV-1a hash of the
// method/gamma/run-index label.
std::uint64_t derive_run_seed(std::uint64_t base_seed, const GradientMethod& method,
                              double gamma, int run_index);

struct CellStatus {
    std::string method_label;
    double gamma = 0.0;
    std::string directory;
    bool ok = false;
    std::string error;
    std::vector<std::uint64_t> seeds;
};

struct SuiteResult {
    int exit_code = 0; // 0 all cells ok, 2 some cell failed
    std::string scenario_dir;
    std::string manifest_path;
    double e_ref = 0.0;
    double e_ground = 0.0;
    std::vector<CellStatus> cells;
};

// Runs the full (method x gamma) grid: per cell one exact-backend
// reference run plus `runs_per_noisy_config` seeded sampled runs,
// written to <out>/<scenario>/<method>__gamma<g>/runs.csv with a
// per-iteration min/max envelope beside it, and a manifest echoing the
// resolved configuration.  Cell failures are recorded and the suite
// continues.
SuiteResult run_suite(const Scenario& scenario);

} // namespace vhalab
