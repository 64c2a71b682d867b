#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhalab/evaluator.hpp"

namespace vhalab {

// Gradient synthesis method: forward finite differences with step
// epsilon, or the parameter-shift rule.
struct GradientMethod {
    enum class Kind : unsigned char { FiniteDifference, ParameterShift };

    Kind kind = Kind::ParameterShift;
    double epsilon = 0.0;

    static GradientMethod fd(double epsilon) {
        return {Kind::FiniteDifference, epsilon};
    }
    static GradientMethod ps() { return {Kind::ParameterShift, 0.0}; }

    // "fd:<eps>" or "ps"; the inverse of parse.
    std::string label() const;
    static GradientMethod parse(const std::string& text);
};

struct GradientReport {
    std::vector<double> gradient;
    // The finite-difference pass evaluates E(theta) anyway; the
    // parameter-shift pass fills it only when asked.
    std::optional<double> energy_at_theta;
    std::uint64_t circuit_evaluations = 0;
    GradientMethod method;
};

// Forward difference per component: [E(theta + eps e_i) - E(theta)] / eps
// with the base energy evaluated once and reused.  Costs R*P + 1
// evaluations.
GradientReport finite_difference_gradient(EnergyEvaluator& ev,
                                          const std::vector<double>& theta, double epsilon);

// For each bound gate g: D_g = [E(mu_g + pi/2) - E(mu_g - pi/2)] / 2,
// the r = 1/2 shift rule; the chain rule accumulates slope * D_g into
// the gate's theta component.  Costs 2G evaluations, plus one when
// with_energy also requests E(theta).
GradientReport parameter_shift_gradient(EnergyEvaluator& ev, const std::vector<double>& theta,
                                        bool with_energy = false);

// Least-squares fit of E(mu) = amplitude * cos(mu + phase) + offset
// over an equally spaced sweep of one gate's angle.  Exact backends
// only; the model is exact there, so max_residual is rounding noise.
struct TrigFit {
    double amplitude = 0.0;
    double phase = 0.0;
    double offset = 0.0;
    double max_residual = 0.0;
};
TrigFit trig_form_probe(EnergyEvaluator& ev, const std::vector<double>& theta,
                        std::size_t gate_index, int n_points = 8);

} // namespace vhalab
