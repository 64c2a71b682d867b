#include "vhalab/density_matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vhalab {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

struct Mat2 {
    std::complex<double> a, b, c, d; // [[a, b], [c, d]]
};

Mat2 single_qubit_matrix(const Gate& gate) {
    switch (gate.kind) {
    case GateKind::RX: {
        const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
        return {c, -kI * s, -kI * s, c};
    }
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
        return {c, -s, s, c};
    }
    case GateKind::RZ:
        return {std::exp(-kI * (gate.angle / 2.0)), 0.0, 0.0, std::exp(kI * (gate.angle / 2.0))};
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {r, r, r, -r};
    }
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    default:
        throw std::logic_error("not a single-qubit gate");
    }
}

// rho <- U rho with U acting on qubit q; every column is a state vector.
void left_mul_single(Eigen::MatrixXcd& m, int q, const Mat2& u) {
    const Eigen::Index stride = Eigen::Index{1} << q;
    const Eigen::Index rows = m.rows();
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        auto column = m.col(col);
        for (Eigen::Index base = 0; base < rows; base += 2 * stride) {
            for (Eigen::Index i = base; i < base + stride; ++i) {
                const std::complex<double> lo = column(i);
                const std::complex<double> hi = column(i + stride);
                column(i) = u.a * lo + u.b * hi;
                column(i + stride) = u.c * lo + u.d * hi;
            }
        }
    }
}

// rho <- rho U^dagger with U acting on qubit q; columns mix with conj(U).
void right_mul_dagger_single(Eigen::MatrixXcd& m, int q, const Mat2& u) {
    const Eigen::Index stride = Eigen::Index{1} << q;
    const Eigen::Index cols = m.cols();
    Eigen::VectorXcd lo(m.rows());
    for (Eigen::Index base = 0; base < cols; base += 2 * stride) {
        for (Eigen::Index j = base; j < base + stride; ++j) {
            lo = m.col(j);
            const auto hi = m.col(j + stride);
            m.col(j) = std::conj(u.a) * lo + std::conj(u.b) * hi;
            m.col(j + stride) = std::conj(u.c) * lo + std::conj(u.d) * hi;
        }
    }
}

std::size_t cnot_image(std::size_t i, std::size_t cbit, std::size_t tbit) {
    return (i & cbit) ? (i ^ tbit) : i;
}

void check_qubits(const DensityMatrix& rho, const Gate& gate) {
    if (gate.q0 < 0 || gate.q0 >= rho.n_qubits)
        throw std::out_of_range("gate qubit out of range");
    if (gate.arity() == 2) {
        if (gate.q1 < 0 || gate.q1 >= rho.n_qubits)
            throw std::out_of_range("gate qubit out of range");
        if (gate.q0 == gate.q1) throw std::invalid_argument("two-qubit gate with equal qubits");
    }
}

} // namespace

NoiseModel NoiseModel::from_gamma(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("noise rate gamma must be finite and nonnegative");
    NoiseModel n;
    n.gamma = gamma;
    n.damping = -std::expm1(-gamma); // 1 - e^-gamma, accurate for small gamma
    return n;
}

NoiseModel NoiseModel::from_damping(double damping) {
    if (!(damping >= 0.0 && damping <= 1.0))
        throw std::invalid_argument("damping must lie in [0, 1]");
    NoiseModel n;
    n.damping = damping;
    n.gamma = damping < 1.0 ? -std::log1p(-damping) : std::numeric_limits<double>::infinity();
    return n;
}

DensityMatrix DensityMatrix::from_state(const StateVector& state) {
    DensityMatrix rho;
    rho.n_qubits = state.n_qubits;
    const Eigen::Index dim = static_cast<Eigen::Index>(state.dimension());
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes.data(), dim);
    rho.entries = psi * psi.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    if (n_qubits < 0 || n_qubits > 15) throw std::invalid_argument("unsupported qubit count");
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    rho.entries = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return rho;
}

void apply_gate_in_place(DensityMatrix& rho, const Gate& gate) {
    check_qubits(rho, gate);
    auto& m = rho.entries;
    switch (gate.kind) {
    case GateKind::CNOT: {
        const std::size_t cbit = std::size_t{1} << gate.q0;
        const std::size_t tbit = std::size_t{1} << gate.q1;
        const std::size_t dim = rho.dimension();
        // row permutation: swap rows i and i^tbit where the control is set
        for (std::size_t i = 0; i < dim; ++i)
            if ((i & cbit) && !(i & tbit))
                m.row(static_cast<Eigen::Index>(i))
                    .swap(m.row(static_cast<Eigen::Index>(i ^ tbit)));
        for (std::size_t j = 0; j < dim; ++j)
            if ((j & cbit) && !(j & tbit))
                m.col(static_cast<Eigen::Index>(j))
                    .swap(m.col(static_cast<Eigen::Index>(cnot_image(j, cbit, tbit))));
        break;
    }
    case GateKind::CZ: {
        const std::size_t mask = (std::size_t{1} << gate.q0) | (std::size_t{1} << gate.q1);
        const std::size_t dim = rho.dimension();
        for (std::size_t i = 0; i < dim; ++i) {
            const bool si = (i & mask) == mask;
            for (std::size_t j = 0; j < dim; ++j) {
                if (si != ((j & mask) == mask))
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= -1.0;
            }
        }
        break;
    }
    default: {
        const Mat2 u = single_qubit_matrix(gate);
        left_mul_single(m, gate.q0, u);
        right_mul_dagger_single(m, gate.q0, u);
        break;
    }
    }
}

void depolarize_all_in_place(DensityMatrix& rho, const NoiseModel& noise) {
    const double g = noise.damping;
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("damping must lie in [0, 1]");
    if (g == 0.0) return;
    // Closed form of K0 rho K0 + sum_i Ki rho Ki on the 2x2 block of one
    // qubit: diagonal entries mix toward each other by Gamma/2, the
    // off-diagonal entries shrink by (1 - Gamma).
    const double keep = 1.0 - g;
    const double diag_keep = 1.0 - g / 2.0;
    const double diag_mix = g / 2.0;
    auto& m = rho.entries;
    const Eigen::Index rows = m.rows();
    for (int q = 0; q < rho.n_qubits; ++q) {
        const Eigen::Index stride = Eigen::Index{1} << q;
        for (Eigen::Index cbase = 0; cbase < rows; cbase += 2 * stride) {
            for (Eigen::Index j = cbase; j < cbase + stride; ++j) {
                for (Eigen::Index rbase = 0; rbase < rows; rbase += 2 * stride) {
                    for (Eigen::Index i = rbase; i < rbase + stride; ++i) {
                        auto& a = m(i, j);                   // row bit 0, col bit 0
                        auto& b = m(i, j + stride);          // row bit 0, col bit 1
                        auto& c = m(i + stride, j);          // row bit 1, col bit 0
                        auto& d = m(i + stride, j + stride); // row bit 1, col bit 1
                        const std::complex<double> a0 = a, d0 = d;
                        a = diag_keep * a0 + diag_mix * d0;
                        d = diag_keep * d0 + diag_mix * a0;
                        b *= keep;
                        c *= keep;
                    }
                }
            }
        }
    }
}

DensityMatrix depolarize_all(DensityMatrix rho, const NoiseModel& noise) {
    depolarize_all_in_place(rho, noise);
    return rho;
}

DensityMatrix run_noisy(const Circuit& circuit, const DensityMatrix& init,
                        const NoiseModel& noise) {
    if (circuit.n_qubits != init.n_qubits)
        throw std::invalid_argument("circuit and state qubit counts differ");
    DensityMatrix rho = init;
    for (const auto& moment : circuit.moments) {
        for (const auto& gate : moment.gates) apply_gate_in_place(rho, gate);
        depolarize_all_in_place(rho, noise);
    }
    return rho;
}

} // namespace vhalab
