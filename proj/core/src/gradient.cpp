#include "vhalab/gradient.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vhalab {

std::string GradientMethod::label() const {
    if (kind == Kind::ParameterShift) return "ps";
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), epsilon);
    if (ec != std::errc{}) throw std::logic_error("cannot format epsilon");
    return std::string("fd:") + std::string(buffer, end);
}

GradientMethod GradientMethod::parse(const std::string& text) {
    if (text == "ps") return ps();
    if (text.rfind("fd:", 0) == 0) {
        const std::string eps_text = text.substr(3);
        double eps = 0.0;
        const auto [ptr, ec] =
            std::from_chars(eps_text.data(), eps_text.data() + eps_text.size(), eps);
        if (ec == std::errc{} && ptr == eps_text.data() + eps_text.size() && eps > 0.0 &&
            std::isfinite(eps))
            return fd(eps);
    }
    throw std::invalid_argument("gradient method must be 'ps' or 'fd:<eps>' with eps > 0, got '" +
                                text + "'");
}

GradientReport finite_difference_gradient(EnergyEvaluator& ev,
                                          const std::vector<double>& theta, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("finite-difference step must be positive");
    GradientReport report;
    report.method = GradientMethod::fd(epsilon);
    const double base = ev.evaluate(theta);
    report.energy_at_theta = base;
    report.gradient.resize(theta.size());
    std::vector<double> shifted = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + epsilon;
        report.gradient[i] = (ev.evaluate(shifted) - base) / epsilon;
        shifted[i] = theta[i];
    }
    report.circuit_evaluations = theta.size() + 1;
    return report;
}

GradientReport parameter_shift_gradient(EnergyEvaluator& ev, const std::vector<double>& theta,
                                        bool with_energy) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    GradientReport report;
    report.method = GradientMethod::ps();
    report.gradient.assign(theta.size(), 0.0);

    Circuit bound = vhalab::bind(ev.compiled(), theta);
    if (with_energy) {
        report.energy_at_theta = ev.evaluate_bound(bound);
        report.circuit_evaluations = 1;
    }
    for (const auto& binding : ev.compiled().bindings) {
        Gate& gate = bound.gate_at(binding.gate_index);
        if (!gate.is_rotation()) throw std::logic_error("binding points at a non-rotation gate");
        const double mu = gate.angle;
        gate.angle = mu + half_pi;
        const double plus = ev.evaluate_bound(bound);
        gate.angle = mu - half_pi;
        const double minus = ev.evaluate_bound(bound);
        gate.angle = mu;
        const double shift_derivative = 0.5 * (plus - minus);
        report.gradient[static_cast<std::size_t>(binding.theta_index)] +=
            binding.slope * shift_derivative;
        report.circuit_evaluations += 2;
    }
    return report;
}

TrigFit trig_form_probe(EnergyEvaluator& ev, const std::vector<double>& theta,
                        std::size_t gate_index, int n_points) {
    if (ev.backend().is_sampled())
        throw std::invalid_argument("trig_form_probe needs the exact backend");
    if (n_points < 4) throw std::invalid_argument("sweep needs at least 4 points");

    Circuit bound = vhalab::bind(ev.compiled(), theta);
    Gate& gate = bound.gate_at(gate_index);
    if (!gate.is_rotation()) throw std::invalid_argument("swept gate must be a rotation");

    Eigen::MatrixXd design(n_points, 3);
    Eigen::VectorXd energies(n_points);
    const double step = 2.0 * std::numbers::pi / n_points;
    for (int k = 0; k < n_points; ++k) {
        const double mu = k * step;
        gate.angle = mu;
        energies(k) = ev.evaluate_bound(bound);
        design(k, 0) = 1.0;
        design(k, 1) = std::cos(mu);
        design(k, 2) = std::sin(mu);
    }
    const Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(energies);

    TrigFit fit;
    fit.offset = coeffs(0);
    fit.amplitude = std::hypot(coeffs(1), coeffs(2));
    // E = A cos(mu + phi) + C means cos coefficient A cos(phi) and sin
    // coefficient -A sin(phi).
    fit.phase = std::atan2(-coeffs(2), coeffs(1));
    const Eigen::VectorXd residuals = design * coeffs - energies;
    fit.max_residual = residuals.cwiseAbs().maxCoeff();
    return fit;
}

} // namespace vhalab
