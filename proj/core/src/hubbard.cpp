#include "vhalab/hubbard.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vhalab/errors.hpp"
#include "vhalab/sector.hpp"

namespace vhalab {

HubbardSpec HubbardSpec::half_filled(int sites, double u, double t) {
    HubbardSpec spec;
    spec.sites = sites;
    spec.u = u;
    spec.t = t;
    spec.filling_per_spin = sites / 2;
    spec.validate();
    return spec;
}

void HubbardSpec::validate() const {
    if (sites < 2 || sites % 2 != 0)
        throw std::invalid_argument("site count must be even and at least 2");
    if (filling_per_spin < 0 || filling_per_spin > sites)
        throw std::invalid_argument("filling per spin must lie in 0..sites");
    if (!std::isfinite(t) || !std::isfinite(u))
        throw std::invalid_argument("couplings must be finite");
}

PauliSum HamiltonianDecomposition::total() const {
    PauliSum sum;
    for (const auto& [label, part] : parts) sum.add(part);
    return sum;
}

namespace {

// (-t/2)(X_a X_b + Y_a Y_b) * Z-string on the qubits strictly between
// a and b; a < b.
void add_hopping_bond(PauliSum& part, int a, int b, double t) {
    for (const PauliAxis axis : {PauliAxis::X, PauliAxis::Y}) {
        PauliString term;
        term.coefficient = -t / 2.0;
        term.factors[a] = axis;
        term.factors[b] = axis;
        for (int p = a + 1; p < b; ++p) term.factors[p] = PauliAxis::Z;
        part.add(term);
    }
}

} // namespace

HamiltonianDecomposition build_hubbard(const HubbardSpec& spec) {
    spec.validate();
    const int m = spec.sites;

    PauliSum w;
    // (n_up - 1/2)(n_down - 1/2) = Z_up Z_down / 4 under n = (1 - Z)/2
    for (int i = 0; i < m; ++i) {
        PauliString term;
        term.coefficient = spec.u / 4.0;
        term.factors[i] = PauliAxis::Z;
        term.factors[i + m] = PauliAxis::Z;
        w.add(term);
    }

    // Bond (i, i+1) is even or odd by the parity of i; the periodic
    // wrap bond (sites-1, 0) is odd for even site counts.  The 2-site
    // ring keeps a single bond between its two sites.
    std::vector<std::pair<int, int>> even_bonds, odd_bonds;
    for (int i = 0; i + 1 < m; ++i)
        (i % 2 == 0 ? even_bonds : odd_bonds).emplace_back(i, i + 1);
    if (spec.boundary == HubbardSpec::Boundary::Periodic && m > 2)
        odd_bonds.emplace_back(0, m - 1);

    auto hopping_sum = [&](const std::vector<std::pair<int, int>>& bonds) {
        PauliSum part;
        for (const auto& [a, b] : bonds)
            for (int offset : {0, m}) add_hopping_bond(part, a + offset, b + offset, spec.t);
        return part;
    };

    HamiltonianDecomposition decomp;
    decomp.spec = spec;
    decomp.n_qubits = spec.n_qubits();
    decomp.parts.emplace_back("W", std::move(w));
    if (m == 2) {
        decomp.parts.emplace_back("T", hopping_sum(even_bonds));
    } else {
        decomp.parts.emplace_back("T_e", hopping_sum(even_bonds));
        decomp.parts.emplace_back("T_o", hopping_sum(odd_bonds));
    }
    return decomp;
}

namespace {

Eigen::MatrixXd hopping_matrix(const HubbardSpec& spec) {
    const int m = spec.sites;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) h(i, i + 1) = h(i + 1, i) = -spec.t;
    if (spec.boundary == HubbardSpec::Boundary::Periodic && m > 2)
        h(0, m - 1) = h(m - 1, 0) = -spec.t;
    return h;
}

} // namespace

StateVector noninteracting_ground_state(
    const HubbardSpec& spec, const std::optional<std::vector<int>>& occupied_orbitals) {
    spec.validate();
    const int m = spec.sites;
    const int filled = spec.filling_per_spin;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hopping_matrix(spec));
    const Eigen::VectorXd levels = solver.eigenvalues(); // ascending
    const Eigen::MatrixXd orbitals = solver.eigenvectors();

    std::vector<int> occupied;
    if (occupied_orbitals) {
        occupied = *occupied_orbitals;
        if (static_cast<int>(occupied.size()) != filled)
            throw std::invalid_argument("occupied orbital count must equal the filling per spin");
        for (int k : occupied)
            if (k < 0 || k >= m) throw std::invalid_argument("orbital index out of range");
    } else {
        if (filled > 0 && filled < m && levels(filled) - levels(filled - 1) < 1e-9)
            throw ConfigError(
                "the Fermi level of the hopping spectrum is degenerate, so the lowest-orbital "
                "Slater determinant is ambiguous; pass occupied_orbitals to pick the occupied "
                "set explicitly");
        occupied.resize(static_cast<std::size_t>(filled));
        for (int k = 0; k < filled; ++k) occupied[static_cast<std::size_t>(k)] = k;
    }

    // Phi(site, slot) for the occupied orbitals; both spins share it.
    Eigen::MatrixXd phi(m, filled);
    for (int slot = 0; slot < filled; ++slot)
        phi.col(slot) = orbitals.col(occupied[static_cast<std::size_t>(slot)]);

    // Determinant of the occupied-orbital rows for one spin pattern,
    // rows taken in ascending site order.
    const std::uint32_t top = std::uint32_t{1} << m;
    std::vector<double> det_of(top, 0.0);
    Eigen::MatrixXd sub(filled, filled);
    for (std::uint32_t pattern = 0; pattern < top; ++pattern) {
        if (std::popcount(pattern) != filled) continue;
        int row = 0;
        for (int site = 0; site < m; ++site)
            if (pattern & (std::uint32_t{1} << site)) sub.row(row++) = phi.row(site);
        det_of[pattern] = filled == 0 ? 1.0 : sub.determinant();
    }

    // Up modes sit below the down modes in the Jordan-Wigner ordering,
    // so the two spin determinants multiply without a crossing sign.
    StateVector state = StateVector::zero_state(spec.n_qubits());
    state.amplitudes[0] = 0.0;
    for (std::uint32_t down = 0; down < top; ++down) {
        if (std::popcount(down) != filled) continue;
        for (std::uint32_t up = 0; up < top; ++up) {
            if (std::popcount(up) != filled) continue;
            const std::size_t index = (static_cast<std::size_t>(down) << m) | up;
            state.amplitudes[index] = det_of[up] * det_of[down];
        }
    }
    return state;
}

double exact_ground_energy(const HamiltonianDecomposition& decomp, int n_up, int n_down) {
    const SectorBasis basis = SectorBasis::build(decomp.spec.sites, n_up, n_down);
    if (basis.dim() == 0) throw std::invalid_argument("empty particle-number sector");
    if (decomp.n_qubits > 14) throw std::invalid_argument("system too large for dense diagonalization");
    const Eigen::MatrixXcd h = sector_matrix(decomp.total(), basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace vhalab
