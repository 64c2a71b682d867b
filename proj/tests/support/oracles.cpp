#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace vhalab::oracles {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// kron ordering: qubit 0 is least significant, so qubit n-1 is the
// leftmost factor.
Matrix embed_single(const Matrix& u, int qubit, int n_qubits) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q)
        out = kron(out, q == qubit ? u : Matrix::Identity(2, 2));
    return out;
}

Matrix rotation_matrix(GateKind kind, double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    Matrix u(2, 2);
    switch (kind) {
    case GateKind::RX: u << c, -kI * s, -kI * s, c; break;
    case GateKind::RY: u << c, -s, s, c; break;
    case GateKind::RZ:
        u << std::exp(-kI * (angle / 2.0)), 0.0, 0.0, std::exp(kI * (angle / 2.0));
        break;
    default: throw std::logic_error("not a rotation");
    }
    return u;
}

} // namespace

Matrix pauli_axis_matrix(PauliAxis axis) {
    Matrix m(2, 2);
    switch (axis) {
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -kI, kI, 0.0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

std::map<int, PauliAxis> axis_map(const std::vector<std::pair<int, char>>& factors) {
    std::map<int, PauliAxis> out;
    for (auto [qubit, letter] : factors) {
        switch (letter) {
        case 'X': out[qubit] = PauliAxis::X; break;
        case 'Y': out[qubit] = PauliAxis::Y; break;
        case 'Z': out[qubit] = PauliAxis::Z; break;
        default: throw std::invalid_argument("axis letter must be X, Y, or Z");
        }
    }
    return out;
}

PauliString make_pauli(double coefficient, const std::vector<std::pair<int, char>>& factors) {
    return PauliString(coefficient, axis_map(factors));
}

Matrix dense_pauli_matrix(const PauliString& term, int n_qubits) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
        auto it = term.factors.find(q);
        out = kron(out, it == term.factors.end() ? Matrix::Identity(2, 2)
                                                 : pauli_axis_matrix(it->second));
    }
    return term.coefficient * out;
}

Matrix dense_pauli_sum_matrix(const PauliSum& sum, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& term : sum.terms()) out += dense_pauli_matrix(term, n_qubits);
    return out;
}

Matrix dense_gate_unitary(const Gate& gate, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return embed_single(rotation_matrix(gate.kind, gate.angle), gate.q0, n_qubits);
    case GateKind::H: {
        Matrix h(2, 2);
        h << 1, 1, 1, -1;
        return embed_single(h / std::sqrt(2.0), gate.q0, n_qubits);
    }
    case GateKind::X:
        return embed_single(pauli_axis_matrix(PauliAxis::X), gate.q0, n_qubits);
    case GateKind::CNOT: {
        Matrix u = Matrix::Zero(dim, dim);
        for (Eigen::Index b = 0; b < dim; ++b) {
            const bool control = (b >> gate.q0) & 1;
            u(control ? b ^ (Eigen::Index{1} << gate.q1) : b, b) = 1.0;
        }
        return u;
    }
    case GateKind::CZ: {
        Matrix u = Matrix::Identity(dim, dim);
        for (Eigen::Index b = 0; b < dim; ++b)
            if (((b >> gate.q0) & 1) && ((b >> gate.q1) & 1)) u(b, b) = -1.0;
        return u;
    }
    }
    throw std::logic_error("unknown gate kind");
}

Matrix dense_circuit_unitary(const Circuit& circuit) {
    const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& moment : circuit.moments)
        for (const auto& gate : moment.gates)
            u = dense_gate_unitary(gate, circuit.n_qubits) * u;
    return u;
}

std::vector<Matrix> depolarizing_kraus(double damping) {
    std::vector<Matrix> kraus;
    kraus.push_back(std::sqrt(1.0 - 3.0 * damping / 4.0) * Matrix::Identity(2, 2));
    for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
        kraus.push_back(std::sqrt(damping) / 2.0 * pauli_axis_matrix(axis));
    return kraus;
}

Matrix dense_depolarize_qubit(const Matrix& rho, int qubit, int n_qubits, double damping) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& k : depolarizing_kraus(damping)) {
        const Matrix kn = embed_single(k, qubit, n_qubits);
        out += kn * rho * kn.adjoint();
    }
    return out;
}

Matrix dense_depolarize_all(const Matrix& rho, int n_qubits, double damping) {
    Matrix out = rho;
    for (int q = 0; q < n_qubits; ++q) out = dense_depolarize_qubit(out, q, n_qubits, damping);
    return out;
}

namespace {

// out += coefficient * P * v, with the phase worked out directly from
// the factor map.
void accumulate_string_action(const PauliString& term, const std::vector<std::complex<double>>& v,
                              std::vector<std::complex<double>>& out) {
    std::uint64_t flip = 0;
    for (const auto& [q, axis] : term.factors)
        if (axis != PauliAxis::Z) flip |= std::uint64_t{1} << q;
    for (std::size_t src = 0; src < v.size(); ++src) {
        std::complex<double> amp = term.coefficient * v[src];
        for (const auto& [q, axis] : term.factors) {
            const bool bit = (src >> q) & 1;
            if (axis == PauliAxis::Y) amp *= bit ? -kI : kI;
            else if (axis == PauliAxis::Z && bit) amp = -amp;
        }
        out[src ^ flip] += amp;
    }
}

} // namespace

std::vector<std::complex<double>> exp_action(const std::vector<PauliString>& terms, double theta,
                                             const std::vector<std::complex<double>>& v,
                                             int n_qubits) {
    (void)n_qubits;
    double norm_bound = 0.0;
    for (const auto& term : terms) norm_bound += std::abs(term.coefficient);
    const double lambda = std::abs(theta) * norm_bound;
    int squarings = 0;
    while (lambda / (1 << squarings) > 0.5) ++squarings;
    const double step = theta / (1 << squarings);

    std::vector<std::complex<double>> result = v;
    for (int s = 0; s < (1 << squarings); ++s) {
        // exp(i * step * A) result by Taylor series; converges fast since
        // |step * A| <= 1/2.
        std::vector<std::complex<double>> acc = result;
        std::vector<std::complex<double>> power = result;
        std::vector<std::complex<double>> next(result.size());
        for (int k = 1; k <= 24; ++k) {
            next.assign(result.size(), {0.0, 0.0});
            for (const auto& term : terms) accumulate_string_action(term, power, next);
            const std::complex<double> factor = kI * step / static_cast<double>(k);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] *= factor;
            // next = (i * step / k) * A * power; running product keeps k! folded in
            for (std::size_t i = 0; i < next.size(); ++i) acc[i] += next[i];
            power = next;
            double tail = 0.0;
            for (const auto& a : power) tail += std::norm(a);
            if (tail < 1e-34) break;
        }
        result = std::move(acc);
    }
    return result;
}

Vector to_eigen(const StateVector& state) {
    return Eigen::Map<const Vector>(state.amplitudes.data(),
                                    static_cast<Eigen::Index>(state.amplitudes.size()));
}

StateVector from_eigen(const Vector& v, int n_qubits) {
    StateVector out;
    out.n_qubits = n_qubits;
    out.amplitudes.assign(v.data(), v.data() + v.size());
    return out;
}

StateVector random_state(int n_qubits, Rng& rng) {
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes.resize(std::size_t{1} << n_qubits);
    double norm = 0.0;
    for (auto& a : state.amplitudes) {
        a = {rng.next_double(-1.0, 1.0), rng.next_double(-1.0, 1.0)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : state.amplitudes) a /= norm;
    return state;
}

Circuit random_circuit(int n_qubits, int gate_count, Rng& rng) {
    std::vector<Gate> gates;
    // Two-qubit kinds need a second distinct wire.
    const int kinds = n_qubits >= 2 ? 7 : 5;
    for (int i = 0; i < gate_count; ++i) {
        const int pick = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(kinds));
        const int q0 = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_qubits));
        int q1 = q0;
        while (pick >= 5 && q1 == q0)
            q1 = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_qubits));
        const double angle = rng.next_double(-3.0, 3.0);
        switch (pick) {
        case 0: gates.push_back(Gate::rx(q0, angle)); break;
        case 1: gates.push_back(Gate::ry(q0, angle)); break;
        case 2: gates.push_back(Gate::rz(q0, angle)); break;
        case 3: gates.push_back(Gate::h(q0)); break;
        case 4: gates.push_back(Gate::x(q0)); break;
        case 5: gates.push_back(Gate::cnot(q0, q1)); break;
        default: gates.push_back(Gate::cz(q0, q1)); break;
        }
    }
    return schedule(n_qubits, gates);
}

std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> theta, double h) {
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double saved = theta[i];
        theta[i] = saved + h;
        const double plus = f(theta);
        theta[i] = saved - h;
        const double minus = f(theta);
        theta[i] = saved;
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

} // namespace vhalab::oracles
