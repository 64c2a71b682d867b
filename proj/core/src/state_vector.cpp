#include "vhalab/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace vhalab {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_qubit(const StateVector& state, int q) {
    if (q < 0 || q >= state.n_qubits) throw std::out_of_range("gate qubit out of range");
}

// state <- M state on qubit q with M = [[a, b], [c, d]]
void apply_single(std::vector<std::complex<double>>& amp, int q,
                  std::complex<double> a, std::complex<double> b,
                  std::complex<double> c, std::complex<double> d) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t size = amp.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const std::complex<double> lo = amp[i];
            const std::complex<double> hi = amp[i + stride];
            amp[i] = a * lo + b * hi;
            amp[i + stride] = c * lo + d * hi;
        }
    }
}

void apply_rz(std::vector<std::complex<double>>& amp, int q, double angle) {
    const std::complex<double> lo_phase = std::exp(-kI * (angle / 2.0));
    const std::complex<double> hi_phase = std::exp(kI * (angle / 2.0));
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= (i & bit) ? hi_phase : lo_phase;
}

void apply_cnot(std::vector<std::complex<double>>& amp, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amp.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amp[i], amp[i | tbit]);
}

void apply_cz(std::vector<std::complex<double>>& amp, int qa, int qb) {
    const std::size_t mask = (std::size_t{1} << qa) | (std::size_t{1} << qb);
    for (std::size_t i = 0; i < amp.size(); ++i)
        if ((i & mask) == mask) amp[i] = -amp[i];
}

} // namespace

StateVector StateVector::zero_state(int n_qubits) {
    if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector basis_state(int n_qubits, std::string_view bits) {
    if (static_cast<int>(bits.size()) != n_qubits)
        throw std::invalid_argument("bitstring length does not match qubit count");
    StateVector s = StateVector::zero_state(n_qubits);
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0/1");
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    s.amplitudes[0] = 0.0;
    s.amplitudes[index] = 1.0;
    return s;
}

void apply_gate_in_place(StateVector& state, const Gate& gate) {
    check_qubit(state, gate.q0);
    if (gate.arity() == 2) {
        check_qubit(state, gate.q1);
        if (gate.q0 == gate.q1) throw std::invalid_argument("two-qubit gate with equal qubits");
    }
    auto& amp = state.amplitudes;
    switch (gate.kind) {
    case GateKind::RX: {
        const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
        apply_single(amp, gate.q0, c, -kI * s, -kI * s, c);
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
        apply_single(amp, gate.q0, c, -s, s, c);
        break;
    }
    case GateKind::RZ:
        apply_rz(amp, gate.q0, gate.angle);
        break;
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_single(amp, gate.q0, r, r, r, -r);
        break;
    }
    case GateKind::X:
        apply_single(amp, gate.q0, 0.0, 1.0, 1.0, 0.0);
        break;
    case GateKind::CNOT:
        apply_cnot(amp, gate.q0, gate.q1);
        break;
    case GateKind::CZ:
        apply_cz(amp, gate.q0, gate.q1);
        break;
    }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    apply_gate_in_place(state, gate);
    return state;
}

StateVector run_pure(const Circuit& circuit, const StateVector& init) {
    if (circuit.n_qubits != init.n_qubits)
        throw std::invalid_argument("circuit and state qubit counts differ");
    StateVector state = init;
    for (const auto& moment : circuit.moments)
        for (const auto& gate : moment.gates) apply_gate_in_place(state, gate);
    return state;
}

} // namespace vhalab
