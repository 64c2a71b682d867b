#pragma once

#include <cstdint>
#include <vector>

#include "vhalab/ansatz.hpp"
#include "vhalab/density_matrix.hpp"
#include "vhalab/observables.hpp"
#include "vhalab/pauli.hpp"
#include "vhalab/state_vector.hpp"

namespace vhalab {

enum class BackendKind : unsigned char { PureExact, PureSampled, NoisySampled };

struct Backend {
    BackendKind kind = BackendKind::PureExact;
    std::uint64_t shots = 0;
    NoiseModel noise;

    static Backend pure_exact() { return {}; }
    static Backend pure_sampled(std::uint64_t shots) {
        return {BackendKind::PureSampled, shots, {}};
    }
    static Backend noisy_sampled(std::uint64_t shots, NoiseModel noise) {
        return {BackendKind::NoisySampled, shots, noise};
    }

    bool is_sampled() const { return kind != BackendKind::PureExact; }
};

// Largest qubit count the density-matrix backend accepts; 8 unless the
// VHA_LAB_DENSITY_CAP environment variable overrides it.
int density_matrix_cap();

// Evaluates E(theta) = <psi(theta)| H |psi(theta)> for a compiled
// ansatz.  Sampled backends draw a fresh RNG substream per Hamiltonian
// term per evaluation, keyed by (seed, running evaluation id, term
// index), so repeating the same call sequence from a fresh evaluator
// reproduces every estimate.
class EnergyEvaluator {
public:
    EnergyEvaluator(CompiledAnsatz compiled, PauliSum hamiltonian, StateVector initial,
                    Backend backend, std::uint64_t seed = 0);

    double evaluate(const std::vector<double>& theta);
    // Evaluates an explicitly bound circuit (used for per-gate angle
    // shifts that bypass the theta-to-mu map).
    double evaluate_bound(const Circuit& bound);

    const CompiledAnsatz& compiled() const { return compiled_; }
    const PauliSum& hamiltonian() const { return hamiltonian_; }
    const StateVector& initial_state() const { return initial_; }
    const Backend& backend() const { return backend_; }
    int n_qubits() const { return initial_.n_qubits; }
    std::uint64_t seed() const { return seed_; }

    // Number of evaluate/evaluate_bound calls so far.
    std::uint64_t evaluation_count() const { return evaluations_; }
    void reset_evaluation_count() { evaluations_ = 0; }

    // Same problem, different backend (for exact side channels).
    EnergyEvaluator with_backend(Backend backend, std::uint64_t seed = 0) const;

private:
    double sampled_pure(const StateVector& state, std::uint64_t eval_id);
    double sampled_noisy(const DensityMatrix& rho, std::uint64_t eval_id);

    CompiledAnsatz compiled_;
    PauliSum hamiltonian_;
    StateVector initial_;
    Backend backend_;
    std::uint64_t seed_ = 0;
    std::uint64_t evaluations_ = 0;
    // Scheduled measurement basis-change circuits per Hamiltonian term,
    // so the noisy backend can apply its channel during the rotations.
    std::vector<Circuit> basis_circuits_;
};

} // namespace vhalab
