#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vhalab/pauli.hpp"
#include "vhalab/state_vector.hpp"

namespace vhalab {

// Basis of the fixed particle-number sector for a two-spin-block
// layout: spin-up occupations in bits 0..sites-1, spin-down in bits
// sites..2*sites-1.  States are sorted ascending, so positions are
// reproducible.
struct SectorBasis {
    int sites = 0;
    int n_up = 0;
    int n_down = 0;
    std::vector<std::uint32_t> states;

    static SectorBasis build(int sites, int n_up, int n_down);

    int dim() const { return static_cast<int>(states.size()); }
    // Position of a basis state, -1 if it lies outside the sector.
    int index_of(std::uint32_t state) const;
};

// Dense matrix of the observable restricted to the sector (matrix
// elements between sector states; transitions leaving the sector are
// projected away).
Eigen::MatrixXcd sector_matrix(const PauliSum& observable, const SectorBasis& basis);

// Sector amplitudes of a full state, and the embedding back.
Eigen::VectorXcd project_to_sector(const StateVector& state, const SectorBasis& basis);
StateVector embed_from_sector(const Eigen::VectorXcd& coeffs, const SectorBasis& basis);

} // namespace vhalab
