#pragma once

#include <Eigen/Dense>

#include "vhalab/circuit.hpp"
#include "vhalab/state_vector.hpp"

namespace vhalab {

// Uniform single-qubit depolarizing noise with rate gamma and damping
// Gamma = 1 - exp(-gamma).  A finite rate always gives Gamma < 1; the
// Gamma = 1 endpoint (fully mixing channel) is reachable only through
// from_damping and is accepted by the channel itself.
struct NoiseModel {
    double gamma = 0.0;
    double damping = 0.0;

    static NoiseModel from_gamma(double gamma);
    static NoiseModel from_damping(double damping);

    bool is_noiseless() const { return damping == 0.0; }
};

struct DensityMatrix {
    int n_qubits = 0;
    Eigen::MatrixXcd entries;

    static DensityMatrix from_state(const StateVector& state);
    static DensityMatrix maximally_mixed(int n_qubits);

    std::size_t dimension() const { return static_cast<std::size_t>(entries.rows()); }
    double trace_real() const { return entries.trace().real(); }
};

// rho <- U rho U^dagger
void apply_gate_in_place(DensityMatrix& rho, const Gate& gate);

// Applies the depolarizing channel with Kraus operators
//   K0 = sqrt(1 - 3 Gamma / 4) I,  Ki = (sqrt(Gamma) / 2) sigma_i
// independently to every qubit.  Requires Gamma in [0, 1].
void depolarize_all_in_place(DensityMatrix& rho, const NoiseModel& noise);
DensityMatrix depolarize_all(DensityMatrix rho, const NoiseModel& noise);

// Runs the circuit moment by moment, applying the channel to all
// qubits after each moment.
DensityMatrix run_noisy(const Circuit& circuit, const DensityMatrix& init,
                        const NoiseModel& noise);

} // namespace vhalab
