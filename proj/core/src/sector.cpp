#include "vhalab/sector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace vhalab {

namespace {

std::vector<std::uint32_t> patterns_with_popcount(int bits, int count) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 0; p < (std::uint32_t{1} << bits); ++p)
        if (std::popcount(p) == count) out.push_back(p);
    return out;
}

std::complex<double> string_phase(std::uint64_t b, const PauliMasks& m) {
    static constexpr std::complex<double> kIPow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    std::complex<double> phase = kIPow[std::popcount(m.y) % 4];
    if (std::popcount(b & m.phase()) % 2) phase = -phase;
    return phase;
}

} // namespace

SectorBasis SectorBasis::build(int sites, int n_up, int n_down) {
    if (sites < 1 || sites > 15) throw std::invalid_argument("unsupported site count");
    if (n_up < 0 || n_up > sites || n_down < 0 || n_down > sites)
        throw std::invalid_argument("particle count outside 0..sites");
    SectorBasis basis;
    basis.sites = sites;
    basis.n_up = n_up;
    basis.n_down = n_down;
    const auto ups = patterns_with_popcount(sites, n_up);
    const auto downs = patterns_with_popcount(sites, n_down);
    basis.states.reserve(ups.size() * downs.size());
    for (std::uint32_t d : downs)
        for (std::uint32_t u : ups) basis.states.push_back((d << sites) | u);
    std::sort(basis.states.begin(), basis.states.end());
    return basis;
}

int SectorBasis::index_of(std::uint32_t state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state) return -1;
    return static_cast<int>(std::distance(states.begin(), it));
}

Eigen::MatrixXcd sector_matrix(const PauliSum& observable, const SectorBasis& basis) {
    const int dim = basis.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : observable.terms()) {
        if (term.is_identity()) {
            m.diagonal().array() += term.coefficient;
            continue;
        }
        const PauliMasks masks = term.masks();
        const std::uint32_t flip = static_cast<std::uint32_t>(masks.flip());
        for (int col = 0; col < dim; ++col) {
            const std::uint32_t b = basis.states[static_cast<std::size_t>(col)];
            const int row = basis.index_of(b ^ flip);
            if (row < 0) continue;
            m(row, col) += term.coefficient * string_phase(b, masks);
        }
    }
    return m;
}

Eigen::VectorXcd project_to_sector(const StateVector& state, const SectorBasis& basis) {
    if (state.n_qubits != 2 * basis.sites)
        throw std::invalid_argument("state and sector qubit counts differ");
    Eigen::VectorXcd v(basis.dim());
    for (int i = 0; i < basis.dim(); ++i)
        v(i) = state.amplitudes[basis.states[static_cast<std::size_t>(i)]];
    return v;
}

StateVector embed_from_sector(const Eigen::VectorXcd& coeffs, const SectorBasis& basis) {
    if (coeffs.size() != basis.dim())
        throw std::invalid_argument("coefficient count does not match sector dimension");
    StateVector state = StateVector::zero_state(2 * basis.sites);
    state.amplitudes[0] = 0.0;
    for (int i = 0; i < basis.dim(); ++i)
        state.amplitudes[basis.states[static_cast<std::size_t>(i)]] = coeffs(i);
    return state;
}

} // namespace vhalab
