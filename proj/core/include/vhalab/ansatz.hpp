#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vhalab/circuit.hpp"
#include "vhalab/hubbard.hpp"
#include "vhalab/pauli.hpp"

namespace vhalab {

// Trial-state recipe: per repetition, apply exp(i theta_{alpha,k} H_alpha)
// for every part alpha in the decomposition's order, with the first
// listed part applied first.
struct VhaAnsatz {
    HamiltonianDecomposition decomposition;
    int repetitions = 1;
};

// Links one parametrized gate to its theta component: the gate angle is
// mu = slope * theta[theta_index].
struct ParamBinding {
    std::size_t gate_index = 0; // flat index into the template circuit
    int theta_index = 0;
    double slope = 1.0;
};

struct CompiledAnsatz {
    Circuit circuit; // scheduled template; bound rotations carry angle 0
    std::vector<ParamBinding> bindings;
    int parts_per_repetition = 0; // P
    int repetitions = 1;          // R
    // Generator of each theta component, in application order: entry j
    // holds the part label and terms of exp(i theta_j * sum(terms)).
    std::vector<std::pair<std::string, std::vector<PauliString>>> generators;

    int parameter_count() const { return parts_per_repetition * repetitions; }
    std::size_t parametrized_gate_count() const { return bindings.size(); }
};

// exp(i theta c P) as basis changes, a CNOT ladder onto the last
// involved qubit, and one RZ with angle slope * theta, slope = -2c.
// An identity term yields an empty gadget (its global phase is
// unobservable and dropped).
struct RotationGadget {
    std::vector<Gate> gates;
    std::size_t rz_position = 0; // index of the parametrized RZ in gates
    double slope = 0.0;
};
RotationGadget exp_pauli_rotation(const PauliString& term);

// Compiles the full trial-state circuit.  Every Hamiltonian term
// becomes one gadget; theta index of part alpha in repetition k is
// k * P + alpha.  Throws std::logic_error if a part's terms fail to
// commute (a broken decomposition).
CompiledAnsatz compile(const VhaAnsatz& ansatz);

// Fills every bound rotation's angle with slope * theta[theta_index].
Circuit bind(const CompiledAnsatz& compiled, const std::vector<double>& theta);

// Circuit-evaluation budgets for one gradient-plus-energy pass.
struct CountReport {
    int p = 0;
    int r = 0;
    std::size_t g = 0;

    std::size_t n_fd() const { return static_cast<std::size_t>(r) * p + 1; }
    std::size_t n_ps() const { return 2 * g + 1; }
};
CountReport count_report(const CompiledAnsatz& compiled);

// JSON document describing the template: gate list per moment with
// kinds, qubits, fixed angles, and the binding table.  Schema is
// documented in the README.
std::string circuit_template_json(const CompiledAnsatz& compiled);

} // namespace vhalab
