#include "vhalab/descent.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace vhalab {

namespace {

bool all_finite(const std::vector<double>& values) {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double deviation_rel(double abs_dev, double e_ref) {
    return e_ref != 0.0 ? abs_dev / std::abs(e_ref) : abs_dev;
}

} // namespace

RunRecord run_descent(EnergyEvaluator& ev, const DescentConfig& config, double e_ref) {
    if (!(config.eta > 0.0) || !std::isfinite(config.eta))
        throw std::invalid_argument("learning rate must be positive");
    if (config.iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (static_cast<int>(config.theta0.size()) != ev.compiled().parameter_count())
        throw std::invalid_argument("theta0 length does not match the parameter count");

    const CountReport counts = count_report(ev.compiled());
    const std::uint64_t per_iteration =
        config.method.kind == GradientMethod::Kind::FiniteDifference ? counts.n_fd()
                                                                     : counts.n_ps();

    // Noiseless side channel for the diagnostic energy column.
    const bool log_exact = ev.n_qubits() <= 12;
    std::unique_ptr<EnergyEvaluator> exact_ev;
    if (log_exact && ev.backend().is_sampled())
        exact_ev = std::make_unique<EnergyEvaluator>(ev.with_backend(Backend::pure_exact()));

    RunRecord record;
    record.config = config;
    record.seed = ev.seed();
    record.e_ref = e_ref;

    std::vector<double> theta = config.theta0;
    const double guard = 1e3 * std::abs(e_ref);

    auto make_row = [&](int t, double energy) {
        IterationRow row;
        row.iteration = t;
        row.theta = theta;
        row.energy = energy;
        row.abs_dev = std::abs(energy - e_ref);
        row.rel_dev = deviation_rel(row.abs_dev, e_ref);
        if (log_exact)
            row.exact_energy = exact_ev ? exact_ev->evaluate(theta) : energy;
        row.cum_circuit_evals = static_cast<std::uint64_t>(t) * per_iteration;
        return row;
    };

    for (int t = 0; t < config.iterations; ++t) {
        GradientReport report =
            config.method.kind == GradientMethod::Kind::FiniteDifference
                ? finite_difference_gradient(ev, theta, config.method.epsilon)
                : parameter_shift_gradient(ev, theta, /*with_energy=*/true);
        const double energy = *report.energy_at_theta;
        record.rows.push_back(make_row(t, energy));
        record.total_evaluations += report.circuit_evaluations;

        if (!std::isfinite(energy) || !all_finite(report.gradient)) {
            record.aborted = true;
            record.abort_reason = "non-finite energy or gradient at iteration " +
                                  std::to_string(t);
            return record;
        }
        if (guard > 0.0 && std::abs(energy) > guard) {
            record.aborted = true;
            record.abort_reason = "energy magnitude exceeded 1000 |E_ref| at iteration " +
                                  std::to_string(t);
            return record;
        }

        for (std::size_t i = 0; i < theta.size(); ++i)
            theta[i] -= config.eta * report.gradient[i];
    }

    // The trailing row reuses the budget formula for its column, but
    // its energy still costs one evaluation (tracked separately).
    record.rows.push_back(make_row(config.iterations, ev.evaluate(theta)));
    record.total_evaluations += 1;
    return record;
}

} // namespace vhalab
