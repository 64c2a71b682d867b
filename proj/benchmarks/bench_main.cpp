#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "vhalab/ansatz.hpp"
#include "vhalab/density_matrix.hpp"
#include "vhalab/evaluator.hpp"
#include "vhalab/gradient.hpp"
#include "vhalab/hubbard.hpp"
#include "vhalab/observables.hpp"
#include "vhalab/rng.hpp"
#include "vhalab/state_vector.hpp"

using namespace vhalab;

namespace {

StateVector random_state(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    StateVector psi = StateVector::zero_state(n_qubits);
    double norm_sq = 0.0;
    for (auto& amp : psi.amplitudes) {
        amp = {rng.next_double(-1.0, 1.0), rng.next_double(-1.0, 1.0)};
        norm_sq += std::norm(amp);
    }
    for (auto& amp : psi.amplitudes) amp /= std::sqrt(norm_sq);
    return psi;
}

EnergyEvaluator ring_evaluator(int sites, int reps, Backend backend) {
    HamiltonianDecomposition decomp = build_hubbard(HubbardSpec::half_filled(sites));
    CompiledAnsatz compiled = compile(VhaAnsatz{decomp, reps});
    return EnergyEvaluator(compiled, decomp.total(), noninteracting_ground_state(decomp.spec),
                           backend);
}

void bench_single_qubit_gate(benchmark::State& state) {
    const int n_qubits = static_cast<int>(state.range(0));
    StateVector psi = random_state(n_qubits, 1);
    const Gate gate = Gate::rz(n_qubits / 2, 0.37);
    for (auto _ : state) {
        apply_gate_in_place(psi, gate);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n_qubits));
}
BENCHMARK(bench_single_qubit_gate)->Arg(8)->Arg(12)->Arg(16);

void bench_cnot_gate(benchmark::State& state) {
    const int n_qubits = static_cast<int>(state.range(0));
    StateVector psi = random_state(n_qubits, 2);
    const Gate gate = Gate::cnot(0, n_qubits - 1);
    for (auto _ : state) {
        apply_gate_in_place(psi, gate);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n_qubits));
}
BENCHMARK(bench_cnot_gate)->Arg(8)->Arg(12)->Arg(16);

void bench_pauli_expectation(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    HamiltonianDecomposition decomp = build_hubbard(HubbardSpec::half_filled(sites));
    StateVector psi = random_state(2 * sites, 3);
    const PauliSum hamiltonian = decomp.total();
    for (auto _ : state) {
        benchmark::DoNotOptimize(expectation(psi, hamiltonian));
    }
}
BENCHMARK(bench_pauli_expectation)->Arg(2)->Arg(6);

void bench_density_moment_with_channel(benchmark::State& state) {
    const int n_qubits = static_cast<int>(state.range(0));
    DensityMatrix rho = DensityMatrix::from_state(random_state(n_qubits, 4));
    const NoiseModel noise = NoiseModel::from_gamma(1e-3);
    const Gate gate = Gate::rz(0, 0.21);
    for (auto _ : state) {
        apply_gate_in_place(rho, gate);
        depolarize_all_in_place(rho, noise);
        benchmark::DoNotOptimize(rho.entries.data());
    }
}
BENCHMARK(bench_density_moment_with_channel)->Arg(4)->Arg(6)->Arg(8);

void bench_exact_energy(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    EnergyEvaluator ev = ring_evaluator(sites, sites == 2 ? 1 : 2, Backend::pure_exact());
    std::vector<double> theta(ev.compiled().parameter_count(), 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.evaluate(theta));
    }
}
BENCHMARK(bench_exact_energy)->Arg(2)->Arg(6);

void bench_fd_gradient(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    EnergyEvaluator ev = ring_evaluator(sites, sites == 2 ? 1 : 2, Backend::pure_exact());
    std::vector<double> theta(ev.compiled().parameter_count(), 0.1);
    for (auto _ : state) {
        GradientReport report = finite_difference_gradient(ev, theta, 0.05);
        benchmark::DoNotOptimize(report.gradient.data());
    }
}
BENCHMARK(bench_fd_gradient)->Arg(2)->Arg(6);

void bench_ps_gradient(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    EnergyEvaluator ev = ring_evaluator(sites, sites == 2 ? 1 : 2, Backend::pure_exact());
    std::vector<double> theta(ev.compiled().parameter_count(), 0.1);
    for (auto _ : state) {
        GradientReport report = parameter_shift_gradient(ev, theta);
        benchmark::DoNotOptimize(report.gradient.data());
    }
}
BENCHMARK(bench_ps_gradient)->Arg(2)->Arg(6);

void bench_sampled_energy(benchmark::State& state) {
    const std::uint64_t shots = static_cast<std::uint64_t>(state.range(0));
    EnergyEvaluator ev = ring_evaluator(2, 1, Backend::pure_sampled(shots));
    std::vector<double> theta(ev.compiled().parameter_count(), 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.evaluate(theta));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shots));
}
BENCHMARK(bench_sampled_energy)->Arg(1000)->Arg(50000);

} // namespace

BENCHMARK_MAIN();
