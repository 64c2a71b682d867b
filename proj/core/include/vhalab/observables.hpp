#pragma once

#include <cstdint>
#include <vector>

#include "vhalab/density_matrix.hpp"
#include "vhalab/pauli.hpp"
#include "vhalab/rng.hpp"
#include "vhalab/state_vector.hpp"

namespace vhalab {

// Exact <O> = sum_terms coeff * <P>.
double expectation(const StateVector& state, const PauliSum& observable);
double expectation(const DensityMatrix& rho, const PauliSum& observable);

// Exact expectation of the bare operator string, ignoring its
// coefficient.
double pauli_expectation(const StateVector& state, const PauliString& term);
double pauli_expectation(const DensityMatrix& rho, const PauliString& term);

// out += scale * (P |in>), with P the bare operator of the term.
void add_scaled_bare_pauli(const StateVector& in, const PauliString& term,
                           std::complex<double> scale, StateVector& out);

// Fixed rotations taking each factor's eigenbasis to the computational
// basis: H for X, and RX(pi/2) for Y since RX(pi/2) Y RX(-pi/2) = Z.
std::vector<Gate> measurement_basis_gates(const PauliString& term);

// Computational-basis probabilities.  The density-matrix variant clamps
// tiny negative diagonal entries to zero.
std::vector<double> diagonal_probabilities(const StateVector& state);
std::vector<double> diagonal_probabilities(const DensityMatrix& rho);

// Draws `shots` basis states by inverse CDF over probs and averages the
// parity eigenvalues (-1)^popcount(index & parity_mask).
double sample_parity_mean(const std::vector<double>& probs, std::uint64_t parity_mask,
                          std::uint64_t shots, Rng& rng);

// Shot-based estimate of the bare <P>: rotate into the term's
// eigenbasis, sample N bitstrings, average the +/-1 outcomes.
// Deterministic for a given rng state.
double sample_expectation(const StateVector& state, const PauliString& term,
                          std::uint64_t shots, Rng& rng);
double sample_expectation(const DensityMatrix& rho, const PauliString& term,
                          std::uint64_t shots, Rng& rng);

} // namespace vhalab
