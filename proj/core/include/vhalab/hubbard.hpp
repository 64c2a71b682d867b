#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vhalab/pauli.hpp"
#include "vhalab/state_vector.hpp"

namespace vhalab {

// 1D Hubbard chain parameters.  Qubit layout after the Jordan-Wigner
// transformation is block ordered: spin-up modes on qubits 0..sites-1,
// spin-down modes on qubits sites..2*sites-1.
struct HubbardSpec {
    enum class Boundary { Periodic, Open };

    int sites = 2;
    double t = 1.0;
    double u = 1.0;
    Boundary boundary = Boundary::Periodic;
    int filling_per_spin = 1;

    static HubbardSpec half_filled(int sites, double u = 1.0, double t = 1.0);

    int n_qubits() const { return 2 * sites; }
    void validate() const;
};

// Ordered commuting parts of the Hamiltonian: {W, T} for 2 sites,
// {W, T_e, T_o} for 4 or more.  Their sum is the full Hamiltonian.
struct HamiltonianDecomposition {
    HubbardSpec spec;
    int n_qubits = 0;
    std::vector<std::pair<std::string, PauliSum>> parts;

    PauliSum total() const;
};

// Jordan-Wigner transformed Hamiltonian.  On-site interaction per site
// i is (U/4) Z_i Z_{i+sites}; each hopping bond contributes
// (-t/2)(XX + YY) with a Z string on the qubits strictly between the
// bond's endpoints.  The periodic wrap is the pair (0, sites-1); the
// 2-site ring has a single bond.
HamiltonianDecomposition build_hubbard(const HubbardSpec& spec);

// Ground state of the hopping-only problem as a Slater determinant per
// spin.  Occupied orbitals default to the lowest filling_per_spin
// single-particle levels; a degenerate Fermi level is an error unless
// occupied_orbitals picks the set explicitly (indices into the
// ascending single-particle spectrum, applied to both spins).
StateVector noninteracting_ground_state(
    const HubbardSpec& spec,
    const std::optional<std::vector<int>>& occupied_orbitals = std::nullopt);

// Lowest eigenvalue of the full Hamiltonian restricted to the fixed
// particle-number sector, by dense diagonalization.
double exact_ground_energy(const HamiltonianDecomposition& decomp, int n_up, int n_down);

} // namespace vhalab
