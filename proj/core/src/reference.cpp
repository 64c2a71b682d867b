#include "vhalab/reference.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vhalab/observables.hpp"
#include "vhalab/rng.hpp"

namespace vhalab {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// state <- exp(i theta c P) state = cos(theta c) state + i sin(theta c) P state,
// fused into one pass over the amplitudes.  P|b> = ipow * (-1)^popcount(b & phase)
// |b ^ flip|, so amplitude pairs (i, i ^ flip) mix with fixed weights.
void apply_term_rotation(StateVector& state, const PauliString& term, double theta) {
    const PauliMasks masks = term.masks();
    const double a = theta * term.coefficient;
    const double c = std::cos(a), s = std::sin(a);
    static constexpr std::complex<double> kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> ipow = kIpow[std::popcount(masks.y) % 4];
    const std::complex<double> mix = kI * s * ipow;
    const std::uint64_t flip = masks.flip();
    const std::uint64_t phase = masks.phase();
    auto& amp = state.amplitudes;
    const std::size_t dim = amp.size();

    if (flip == 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = std::popcount(i & phase) & 1 ? -1.0 : 1.0;
            amp[i] *= c + mix * sign;
        }
        return;
    }
    // Enumerate each pair once: i has the top flip bit clear, j has it set.
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(flip));
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & top) continue;
        const std::size_t j = i ^ flip;
        const double sign_i = std::popcount(i & phase) & 1 ? -1.0 : 1.0;
        const double sign_j = std::popcount(j & phase) & 1 ? -1.0 : 1.0;
        const std::complex<double> ai = amp[i], aj = amp[j];
        amp[i] = c * ai + mix * sign_j * aj;
        amp[j] = c * aj + mix * sign_i * ai;
    }
}

// state <- exp(i theta * sum(terms)) state; terms commute, so the
// product of the individual rotations is exact.
void apply_generator(StateVector& state, const std::vector<PauliString>& terms, double theta) {
    for (const auto& term : terms) apply_term_rotation(state, term, theta);
}

// out <- sum(coefficient * P) applied to state; out is overwritten.
void apply_string_list(const StateVector& state, const std::vector<PauliString>& terms,
                       StateVector& out) {
    out.n_qubits = state.n_qubits;
    out.amplitudes.assign(state.amplitudes.size(), {0.0, 0.0});
    for (const auto& term : terms) add_scaled_bare_pauli(state, term, term.coefficient, out);
}

void apply_sum(const StateVector& state, const PauliSum& sum, StateVector& out) {
    out.n_qubits = state.n_qubits;
    out.amplitudes.assign(state.amplitudes.size(), {0.0, 0.0});
    for (const auto& term : sum.terms())
        add_scaled_bare_pauli(state, term, term.coefficient, out);
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

struct EnergyAndGradient {
    double energy = 0.0;
    std::vector<double> gradient;
};

// Buffers reused across descent iterations; the landscape evaluation
// itself allocates nothing.
struct AdjointWorkspace {
    std::vector<StateVector> phi;
    StateVector lambda;
    StateVector generated;
};

// Reverse-mode pass.  With phi_{j+1} the state after the first j+1
// generators and lambda_j = U_{j+1}^dag ... U_{K-1}^dag H psi,
// dE/dtheta_j = -2 Im <lambda_j | A_j | phi_{j+1}>.
EnergyAndGradient energy_and_gradient(const CompiledAnsatz& compiled,
                                      const PauliSum& hamiltonian, const StateVector& initial,
                                      const std::vector<double>& theta, AdjointWorkspace& ws) {
    const auto& generators = compiled.generators;
    const std::size_t k = generators.size();

    ws.phi.resize(k + 1);
    ws.phi[0] = initial;
    for (std::size_t j = 0; j < k; ++j) {
        ws.phi[j + 1] = ws.phi[j];
        apply_generator(ws.phi[j + 1], generators[j].second, theta[j]);
    }

    EnergyAndGradient result;
    apply_sum(ws.phi[k], hamiltonian, ws.lambda);
    result.energy = inner(ws.phi[k], ws.lambda).real();
    result.gradient.assign(k, 0.0);
    for (std::size_t j = k; j-- > 0;) {
        apply_string_list(ws.phi[j + 1], generators[j].second, ws.generated);
        result.gradient[j] = -2.0 * inner(ws.lambda, ws.generated).imag();
        // lambda_{j-1} = U_j^dag lambda_j
        apply_generator(ws.lambda, generators[j].second, -theta[j]);
    }
    return result;
}

} // namespace

double reference_descent_from(const CompiledAnsatz& compiled, const PauliSum& hamiltonian,
                              const StateVector& initial, std::vector<double> theta,
                              const ReferenceOptions& options) {
    if (static_cast<int>(theta.size()) != compiled.parameter_count())
        throw std::invalid_argument("start point length does not match the parameter count");

    // A run that improves the energy by less than this for several
    // consecutive iterations has converged to working precision;
    // stopping there makes the result insensitive to the iteration cap.
    constexpr double kPlateau = 1e-13;
    constexpr int kPlateauWindow = 5;

    AdjointWorkspace ws;
    double previous = std::numeric_limits<double>::infinity();
    int flat_iterations = 0;
    for (int it = 0; it < options.iterations; ++it) {
        const EnergyAndGradient step =
            energy_and_gradient(compiled, hamiltonian, initial, theta, ws);
        if (!std::isfinite(step.energy))
            return std::numeric_limits<double>::infinity(); // diverged start, never the best
        double max_component = 0.0;
        for (double g : step.gradient) max_component = std::max(max_component, std::abs(g));
        if (max_component < options.grad_tolerance) break;
        const double drop = previous - step.energy;
        flat_iterations = drop >= 0.0 && drop < kPlateau ? flat_iterations + 1 : 0;
        if (flat_iterations >= kPlateauWindow) break;
        previous = step.energy;
        for (std::size_t i = 0; i < theta.size(); ++i)
            theta[i] -= options.eta * step.gradient[i];
    }
    AdjointWorkspace final_ws;
    return energy_and_gradient(compiled, hamiltonian, initial, theta, final_ws).energy;
}

double ansatz_optimal_energy(const CompiledAnsatz& compiled, const PauliSum& hamiltonian,
                             const StateVector& initial, const ReferenceOptions& options) {
    if (options.starts < 0) throw std::invalid_argument("random start count must not be negative");
    const int params = compiled.parameter_count();

    // Canonical start first, then seeded random starts.
    double best = reference_descent_from(compiled, hamiltonian, initial,
                                         std::vector<double>(params, 0.1), options);
    Rng rng(options.seed);
    for (int s = 0; s < options.starts; ++s) {
        std::vector<double> theta(static_cast<std::size_t>(params));
        for (auto& v : theta) v = rng.next_double(-std::numbers::pi, std::numbers::pi);
        best = std::min(best,
                        reference_descent_from(compiled, hamiltonian, initial, theta, options));
    }
    return best;
}

} // namespace vhalab
