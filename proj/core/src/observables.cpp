#include "vhalab/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vhalab {

namespace {

// P |b> = phase(b) |b ^ flip> with phase(b) = i^{#Y} * (-1)^{popcount(b & (y|z))}
std::complex<double> string_phase(std::uint64_t b, const PauliMasks& m) {
    static constexpr std::complex<double> kIPow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    std::complex<double> phase = kIPow[std::popcount(m.y) % 4];
    if (std::popcount(b & m.phase()) % 2) phase = -phase;
    return phase;
}

void check_term_fits(int n_qubits, const PauliString& term) {
    if (term.max_qubit() >= n_qubits)
        throw std::invalid_argument("observable acts on qubits outside the state");
}

} // namespace

double pauli_expectation(const StateVector& state, const PauliString& term) {
    check_term_fits(state.n_qubits, term);
    const PauliMasks m = term.masks();
    const std::uint64_t flip = m.flip();
    const auto& amp = state.amplitudes;
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t b = 0; b < amp.size(); ++b)
        acc += std::conj(amp[b ^ flip]) * string_phase(b, m) * amp[b];
    return acc.real();
}

double pauli_expectation(const DensityMatrix& rho, const PauliString& term) {
    check_term_fits(rho.n_qubits, term);
    const PauliMasks m = term.masks();
    const std::uint64_t flip = m.flip();
    const std::uint64_t dim = rho.dimension();
    // tr(P rho) = sum_b <b|P rho|b> = sum_b phase(b ^ flip) rho(b ^ flip, b)
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t b = 0; b < dim; ++b)
        acc += string_phase(b ^ flip, m) *
               rho.entries(static_cast<Eigen::Index>(b ^ flip), static_cast<Eigen::Index>(b));
    return acc.real();
}

double expectation(const StateVector& state, const PauliSum& observable) {
    double value = 0.0;
    for (const auto& term : observable.terms())
        value += term.coefficient * (term.is_identity() ? 1.0 : pauli_expectation(state, term));
    return value;
}

double expectation(const DensityMatrix& rho, const PauliSum& observable) {
    double value = 0.0;
    for (const auto& term : observable.terms())
        value += term.coefficient *
                 (term.is_identity() ? rho.trace_real() : pauli_expectation(rho, term));
    return value;
}

void add_scaled_bare_pauli(const StateVector& in, const PauliString& term,
                           std::complex<double> scale, StateVector& out) {
    check_term_fits(in.n_qubits, term);
    if (out.amplitudes.size() != in.amplitudes.size())
        throw std::invalid_argument("state dimensions differ");
    const PauliMasks m = term.masks();
    const std::uint64_t flip = m.flip();
    for (std::uint64_t b = 0; b < in.amplitudes.size(); ++b)
        out.amplitudes[b ^ flip] += scale * string_phase(b, m) * in.amplitudes[b];
}

std::vector<Gate> measurement_basis_gates(const PauliString& term) {
    std::vector<Gate> gates;
    for (const auto& [q, axis] : term.factors) {
        if (axis == PauliAxis::X)
            gates.push_back(Gate::h(q));
        else if (axis == PauliAxis::Y)
            gates.push_back(Gate::rx(q, std::numbers::pi / 2.0));
    }
    return gates;
}

std::vector<double> diagonal_probabilities(const StateVector& state) {
    std::vector<double> probs(state.amplitudes.size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state.amplitudes[i]);
    return probs;
}

std::vector<double> diagonal_probabilities(const DensityMatrix& rho) {
    std::vector<double> probs(rho.dimension());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const Eigen::Index k = static_cast<Eigen::Index>(i);
        probs[i] = std::max(rho.entries(k, k).real(), 0.0);
    }
    return probs;
}

double sample_parity_mean(const std::vector<double>& probs, std::uint64_t parity_mask,
                          std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    std::vector<double> cdf(probs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        total += probs[i];
        cdf[i] = total;
    }
    if (!(total > 0.0)) throw std::invalid_argument("probability mass must be positive");
    std::uint64_t even = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t index =
            it == cdf.end() ? probs.size() - 1
                            : static_cast<std::size_t>(std::distance(cdf.begin(), it));
        if (std::popcount(index & parity_mask) % 2 == 0) ++even;
    }
    // exact mean of +/-1 outcomes: (even - odd) / shots
    return (2.0 * static_cast<double>(even) - static_cast<double>(shots)) /
           static_cast<double>(shots);
}

double sample_expectation(const StateVector& state, const PauliString& term,
                          std::uint64_t shots, Rng& rng) {
    if (term.is_identity()) throw std::invalid_argument("cannot sample an identity term");
    check_term_fits(state.n_qubits, term);
    StateVector rotated = state;
    for (const auto& g : measurement_basis_gates(term)) apply_gate_in_place(rotated, g);
    return sample_parity_mean(diagonal_probabilities(rotated), term.masks().support(), shots,
                              rng);
}

double sample_expectation(const DensityMatrix& rho, const PauliString& term,
                          std::uint64_t shots, Rng& rng) {
    if (term.is_identity()) throw std::invalid_argument("cannot sample an identity term");
    check_term_fits(rho.n_qubits, term);
    DensityMatrix rotated = rho;
    for (const auto& g : measurement_basis_gates(term)) apply_gate_in_place(rotated, g);
    return sample_parity_mean(diagonal_probabilities(rotated), term.masks().support(), shots,
                              rng);
}

} // namespace vhalab
