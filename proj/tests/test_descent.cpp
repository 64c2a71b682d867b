#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "support/oracles.hpp"
#include "vhalab/ansatz.hpp"
#include "vhalab/descent.hpp"
#include "vhalab/evaluator.hpp"
#include "vhalab/experiment.hpp"
#include "vhalab/gradient.hpp"
#include "vhalab/hubbard.hpp"

using namespace vhalab;

namespace {

DescentConfig ps_config(double eta, int iterations, std::vector<double> theta0) {
    DescentConfig config;
    config.eta = eta;
    config.iterations = iterations;
    config.method = GradientMethod::ps();
    config.theta0 = std::move(theta0);
    return config;
}

} // namespace

TEST_CASE("a stationary point never moves") {
    EnergyEvaluator ev = make_evaluator(build_simple_scenario(), Backend::pure_exact());
    const double pi = std::numbers::pi;
    RunRecord record = run_descent(ev, ps_config(0.5, 10, {pi}), -1.0);

    REQUIRE(record.rows.size() == 11);
    CHECK(!record.aborted);
    for (const auto& row : record.rows) {
        CHECK(std::abs(row.theta[0] - pi) < 1e-12);
        CHECK(row.energy == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(row.abs_dev < 1e-12);
    }
}

TEST_CASE("one step moves theta by eta times the gradient") {
    EnergyEvaluator ev = make_evaluator(build_simple_scenario(), Backend::pure_exact());
    const double theta0 = 0.7;
    const double eta = 0.5;

    RunRecord ps = run_descent(ev, ps_config(eta, 1, {theta0}), -1.0);
    REQUIRE(ps.rows.size() == 2);
    double expected = theta0 - eta * (-std::sin(theta0));
    CHECK(ps.rows[1].theta[0] == doctest::Approx(expected).epsilon(1e-13));
    CHECK(ps.rows[1].energy == doctest::Approx(std::cos(expected)).epsilon(1e-13));

    DescentConfig fd_config = ps_config(eta, 1, {theta0});
    fd_config.method = GradientMethod::fd(0.2);
    RunRecord fd = run_descent(ev, fd_config, -1.0);
    double quotient = (std::cos(theta0 + 0.2) - std::cos(theta0)) / 0.2;
    CHECK(fd.rows[1].theta[0] == doctest::Approx(theta0 - eta * quotient).epsilon(1e-13));
}

TEST_CASE("exact-backend descent reaches the two-site ground state") {
    HamiltonianDecomposition decomp = build_hubbard(HubbardSpec::half_filled(2));
    CompiledAnsatz compiled = compile(VhaAnsatz{decomp, 1});
    EnergyEvaluator ev(compiled, decomp.total(), noninteracting_ground_state(decomp.spec),
                       Backend::pure_exact());
    const double ground = exact_ground_energy(decomp, 1, 1);

    RunRecord record = run_descent(ev, ps_config(0.1, 200, {0.1, 0.1}), ground);
    REQUIRE(record.rows.size() == 201);
    CHECK(!record.aborted);

    // Energies never increase along the trajectory.
    for (std::size_t t = 1; t < record.rows.size(); ++t)
        CHECK(record.rows[t].energy <= record.rows[t - 1].energy + 1e-12);

    CHECK(std::abs(record.rows.back().energy - ground) <= 1e-6);
    // The variational bound holds everywhere.
    for (const auto& row : record.rows) CHECK(row.energy >= ground - 1e-9);
}

TEST_CASE("rows carry exact budget and deviation bookkeeping") {
    HamiltonianDecomposition decomp = build_hubbard(HubbardSpec::half_filled(2));
    CompiledAnsatz compiled = compile(VhaAnsatz{decomp, 2});
    EnergyEvaluator ev(compiled, decomp.total(), noninteracting_ground_state(decomp.spec),
                       Backend::pure_exact());
    const CountReport counts = count_report(compiled);
    const double e_ref = -2.06155281280883;

    DescentConfig config = ps_config(0.1, 5, {0.1, 0.1, 0.1, 0.1});
    RunRecord ps = run_descent(ev, config, e_ref);
    REQUIRE(ps.rows.size() == 6);
    for (int t = 0; t <= 5; ++t) {
        const IterationRow& row = ps.rows[static_cast<std::size_t>(t)];
        CHECK(row.iteration == t);
        CHECK(row.cum_circuit_evals == static_cast<std::uint64_t>(t) * counts.n_ps());
        CHECK(row.abs_dev == doctest::Approx(std::abs(row.energy - e_ref)).epsilon(1e-15));
        CHECK(row.rel_dev ==
              doctest::Approx(row.abs_dev / std::abs(e_ref)).epsilon(1e-15));
        REQUIRE(row.exact_energy.has_value());
        CHECK(*row.exact_energy == doctest::Approx(row.energy).epsilon(1e-12));
    }
    CHECK(ps.total_evaluations == 5 * counts.n_ps() + 1);
    CHECK(ps.e_ref == e_ref);

    config.method = GradientMethod::fd(0.05);
    RunRecord fd = run_descent(ev, config, e_ref);
    for (int t = 0; t <= 5; ++t)
        CHECK(fd.rows[static_cast<std::size_t>(t)].cum_circuit_evals ==
              static_cast<std::uint64_t>(t) * counts.n_fd());
    CHECK(fd.total_evaluations == 5 * counts.n_fd() + 1);
}

TEST_CASE("sampled descent runs are seed-deterministic") {
    ScenarioSetup setup = build_simple_scenario();
    Backend sampled = Backend::pure_sampled(2000);
    DescentConfig config = ps_config(0.5, 8, {2.0});

    EnergyEvaluator a = make_evaluator(setup, sampled, 314);
    EnergyEvaluator b = make_evaluator(setup, sampled, 314);
    EnergyEvaluator c = make_evaluator(setup, sampled, 315);
    RunRecord ra = run_descent(a, config, -1.0);
    RunRecord rb = run_descent(b, config, -1.0);
    RunRecord rc = run_descent(c, config, -1.0);

    REQUIRE(ra.rows.size() == rb.rows.size());
    bool identical = true;
    bool differs_from_c = false;
    for (std::size_t t = 0; t < ra.rows.size(); ++t) {
        identical = identical && ra.rows[t].energy == rb.rows[t].energy &&
                    ra.rows[t].theta == rb.rows[t].theta;
        differs_from_c = differs_from_c || ra.rows[t].energy != rc.rows[t].energy;
    }
    CHECK(identical);
    CHECK(differs_from_c);
    CHECK(ra.seed == 314);
}

TEST_CASE("sampled rows log the noisy energy next to the exact side channel") {
    ScenarioSetup setup = build_simple_scenario();
    EnergyEvaluator ev = make_evaluator(setup, Backend::pure_sampled(500), 77);
    RunRecord record = run_descent(ev, ps_config(0.5, 6, {2.0}), -1.0);

    bool any_noise = false;
    for (const auto& row : record.rows) {
        REQUIRE(row.exact_energy.has_value());
        CHECK(*row.exact_energy == doctest::Approx(std::cos(row.theta[0])).epsilon(1e-12));
        any_noise = any_noise || row.energy != *row.exact_energy;
    }
    CHECK(any_noise);
}

TEST_CASE("a runaway trajectory aborts with a diagnostic") {
    EnergyEvaluator ev = make_evaluator(build_simple_scenario(), Backend::pure_exact());
    // With |E_ref| this small the very first logged energy trips the guard.
    RunRecord record = run_descent(ev, ps_config(0.5, 20, {0.7}), 1e-6);

    CHECK(record.aborted);
    CHECK(!record.abort_reason.empty());
    CHECK(record.rows.size() < 21);
    CHECK(record.rows.size() == 1);
}

TEST_CASE("invalid descent configurations are rejected") {
    EnergyEvaluator ev = make_evaluator(build_simple_scenario(), Backend::pure_exact());
    DescentConfig config = ps_config(0.5, 10, {0.1});

    DescentConfig bad_eta = config;
    bad_eta.eta = 0.0;
    CHECK_THROWS_AS((void)run_descent(ev, bad_eta, -1.0), std::invalid_argument);

    DescentConfig bad_iters = config;
    bad_iters.iterations = 0;
    CHECK_THROWS_AS((void)run_descent(ev, bad_iters, -1.0), std::invalid_argument);

    DescentConfig bad_theta = config;
    bad_theta.theta0 = {0.1, 0.2};
    CHECK_THROWS_AS((void)run_descent(ev, bad_theta, -1.0), std::invalid_argument);
}
