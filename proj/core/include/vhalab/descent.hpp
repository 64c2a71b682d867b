#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhalab/evaluator.hpp"
#include "vhalab/gradient.hpp"

namespace vhalab {

struct DescentConfig {
    double eta = 0.1;
    int iterations = 50;
    GradientMethod method;
    std::vector<double> theta0;
};

struct IterationRow {
    int iteration = 0;
    std::vector<double> theta;
    double energy = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    // Noiseless energy at the same theta; filled when the system is
    // small enough (at most 12 qubits).
    std::optional<double> exact_energy;
    // Budget column: iteration * (N_fd or N_ps).
    std::uint64_t cum_circuit_evals = 0;
};

struct RunRecord {
    DescentConfig config;
    std::uint64_t seed = 0;
    double e_ref = 0.0;
    std::vector<IterationRow> rows; // iterations + 1 when the run completes
    bool aborted = false;
    std::string abort_reason;
    // Evaluations actually spent; one more than the last row's budget
    // column because the final logged energy costs its own evaluation.
    std::uint64_t total_evaluations = 0;
};

// Fixed-learning-rate steepest descent theta <- theta - eta * grad,
// driven by the configured gradient method.  Each iteration logs the
// energy the backend itself reports at the current theta (so sampled
// runs log noisy energies).  Aborts with a diagnostic record on
// non-finite values or |E| > 1000 |E_ref|.
RunRecord run_descent(EnergyEvaluator& ev, const DescentConfig& config, double e_ref);

} // namespace vhalab
