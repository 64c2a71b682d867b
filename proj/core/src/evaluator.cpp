#include "vhalab/evaluator.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "vhalab/errors.hpp"

namespace vhalab {

int density_matrix_cap() {
    constexpr int kDefault = 8;
    const char* raw = std::getenv("VHA_LAB_DENSITY_CAP");
    if (raw == nullptr || *raw == '\0') return kDefault;
    try {
        const int cap = std::stoi(raw);
        if (cap < 1) throw std::invalid_argument("nonpositive");
        return cap;
    } catch (const std::exception&) {
        throw ConfigError("VHA_LAB_DENSITY_CAP must be a positive integer");
    }
}

EnergyEvaluator::EnergyEvaluator(CompiledAnsatz compiled, PauliSum hamiltonian,
                                 StateVector initial, Backend backend, std::uint64_t seed)
    : compiled_(std::move(compiled)),
      hamiltonian_(std::move(hamiltonian)),
      initial_(std::move(initial)),
      backend_(backend),
      seed_(seed) {
    if (compiled_.circuit.n_qubits != initial_.n_qubits)
        throw std::invalid_argument("ansatz and initial state qubit counts differ");
    if (hamiltonian_.min_qubit_count() > initial_.n_qubits)
        throw std::invalid_argument("Hamiltonian acts on qubits outside the state");
    if (backend_.is_sampled() && backend_.shots == 0)
        throw std::invalid_argument("sampled backends need at least 1 shot");
    if (backend_.kind == BackendKind::NoisySampled) {
        const int cap = density_matrix_cap();
        if (initial_.n_qubits > cap)
            throw ConfigError("the density-matrix backend is capped at " + std::to_string(cap) +
                              " qubits (override with VHA_LAB_DENSITY_CAP); requested " +
                              std::to_string(initial_.n_qubits));
        basis_circuits_.reserve(hamiltonian_.size());
        for (const auto& term : hamiltonian_.terms())
            basis_circuits_.push_back(
                schedule(initial_.n_qubits, measurement_basis_gates(term)));
    }
}

double EnergyEvaluator::evaluate(const std::vector<double>& theta) {
    return evaluate_bound(vhalab::bind(compiled_, theta));
}

double EnergyEvaluator::evaluate_bound(const Circuit& bound) {
    const std::uint64_t eval_id = evaluations_++;
    switch (backend_.kind) {
    case BackendKind::PureExact:
        return expectation(run_pure(bound, initial_), hamiltonian_);
    case BackendKind::PureSampled:
        return sampled_pure(run_pure(bound, initial_), eval_id);
    case BackendKind::NoisySampled: {
        const DensityMatrix rho =
            run_noisy(bound, DensityMatrix::from_state(initial_), backend_.noise);
        return sampled_noisy(rho, eval_id);
    }
    }
    throw std::logic_error("unknown backend kind");
}

double EnergyEvaluator::sampled_pure(const StateVector& state, std::uint64_t eval_id) {
    double energy = 0.0;
    const auto& terms = hamiltonian_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& term = terms[i];
        if (term.is_identity()) {
            energy += term.coefficient;
            continue;
        }
        Rng rng(substream_seed(seed_, eval_id, i));
        energy += term.coefficient * sample_expectation(state, term, backend_.shots, rng);
    }
    return energy;
}

double EnergyEvaluator::sampled_noisy(const DensityMatrix& rho, std::uint64_t eval_id) {
    double energy = 0.0;
    const auto& terms = hamiltonian_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& term = terms[i];
        if (term.is_identity()) {
            energy += term.coefficient;
            continue;
        }
        // The basis-change moments see the same depolarizing channel as
        // the main circuit; only the readout itself is noise free.
        const DensityMatrix rotated = run_noisy(basis_circuits_[i], rho, backend_.noise);
        Rng rng(substream_seed(seed_, eval_id, i));
        energy += term.coefficient *
                  sample_parity_mean(diagonal_probabilities(rotated), term.masks().support(),
                                     backend_.shots, rng);
    }
    return energy;
}

EnergyEvaluator EnergyEvaluator::with_backend(Backend backend, std::uint64_t seed) const {
    return EnergyEvaluator(compiled_, hamiltonian_, initial_, backend, seed);
}

} // namespace vhalab
