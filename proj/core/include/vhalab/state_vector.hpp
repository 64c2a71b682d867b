#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "vhalab/circuit.hpp"

namespace vhalab {

// Dense amplitude vector over 2^n_qubits basis states.  Qubit 0 is the
// least significant bit of the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amplitudes;

    static StateVector zero_state(int n_qubits);

    std::size_t dimension() const { return amplitudes.size(); }
    double norm() const;
};

// bits is a binary numeral: the leftmost character is the highest
// qubit, so basis_state(2, "10") puts the amplitude at index 2.
StateVector basis_state(int n_qubits, std::string_view bits);

void apply_gate_in_place(StateVector& state, const Gate& gate);
StateVector apply_gate(StateVector state, const Gate& gate);

StateVector run_pure(const Circuit& circuit, const StateVector& init);

} // namespace vhalab
