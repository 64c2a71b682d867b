#include <doctest.h>

#include <complex>
#include <map>

#include "support/oracles.hpp"
#include "vhalab/pauli.hpp"
#include "vhalab/rng.hpp"

using namespace vhalab;
namespace orc = vhalab::oracles;

namespace {

PauliString make_string(double coefficient, std::map<int, PauliAxis> factors) {
    PauliString s;
    s.coefficient = coefficient;
    s.factors = std::move(factors);
    return s;
}

PauliString random_string(int n_qubits, Rng& rng) {
    PauliString s;
    s.coefficient = rng.next_double(-2.0, 2.0);
    for (int q = 0; q < n_qubits; ++q) {
        switch (rng.next_u64() % 4) {
        case 0: break;
        case 1: s.factors[q] = PauliAxis::X; break;
        case 2: s.factors[q] = PauliAxis::Y; break;
        default: s.factors[q] = PauliAxis::Z; break;
        }
    }
    return s;
}

} // namespace

TEST_CASE("pauli string basics") {
    const PauliString id = PauliString::identity(2.5);
    CHECK(id.is_identity());
    CHECK(id.weight() == 0);
    CHECK(id.coefficient == doctest::Approx(2.5));

    const PauliString s = make_string(-0.5, {{0, PauliAxis::X}, {3, PauliAxis::Z}});
    CHECK_FALSE(s.is_identity());
    CHECK(s.weight() == 2);
    CHECK(s.max_qubit() == 3);
    CHECK(s.to_string() == "-0.5 * X0 Z3");
}

TEST_CASE("masks encode flip and phase sets") {
    const PauliString s =
        make_string(1.0, {{0, PauliAxis::X}, {1, PauliAxis::Y}, {2, PauliAxis::Z}});
    const PauliMasks m = s.masks();
    CHECK(m.x == 0b001);
    CHECK(m.y == 0b010);
    CHECK(m.z == 0b100);
    CHECK(m.flip() == 0b011);
    CHECK(m.phase() == 0b110);
    CHECK(m.support() == 0b111);

    PauliString far = make_string(1.0, {{64, PauliAxis::X}});
    CHECK_THROWS_AS(far.masks(), std::out_of_range);
}

TEST_CASE("pauli product matches dense matrix multiplication") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const PauliString a = random_string(3, rng);
        const PauliString b = random_string(3, rng);
        const auto [product, phase] = pauli_product(a, b);

        const orc::Matrix lhs =
            orc::dense_pauli_matrix(a, 3) * orc::dense_pauli_matrix(b, 3);
        const orc::Matrix rhs = phase * orc::dense_pauli_matrix(product, 3);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("single-qubit products carry the cyclic phases") {
    const PauliString x = make_string(1.0, {{0, PauliAxis::X}});
    const PauliString y = make_string(1.0, {{0, PauliAxis::Y}});

    const auto [xy, xy_phase] = pauli_product(x, y);
    CHECK(xy.factors.at(0) == PauliAxis::Z);
    CHECK(xy_phase == std::complex<double>{0.0, 1.0});

    const auto [yx, yx_phase] = pauli_product(y, x);
    CHECK(yx.factors.at(0) == PauliAxis::Z);
    CHECK(yx_phase == std::complex<double>{0.0, -1.0});

    const auto [xx, xx_phase] = pauli_product(x, x);
    CHECK(xx.is_identity());
    CHECK(xx_phase == std::complex<double>{1.0, 0.0});
}

TEST_CASE("commutation agrees with the dense commutator") {
    Rng rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        const PauliString a = random_string(3, rng);
        const PauliString b = random_string(3, rng);
        const orc::Matrix ma = orc::dense_pauli_matrix(a, 3);
        const orc::Matrix mb = orc::dense_pauli_matrix(b, 3);
        const double comm_norm = (ma * mb - mb * ma).cwiseAbs().maxCoeff();
        CHECK(a.commutes_with(b) == (comm_norm < 1e-12));
    }
}

TEST_CASE("pauli sum merges duplicate factor maps") {
    PauliSum sum;
    sum.add(make_string(0.5, {{0, PauliAxis::Z}}));
    sum.add(make_string(0.25, {{0, PauliAxis::Z}}));
    sum.add(make_string(1.0, {{1, PauliAxis::X}}));
    CHECK(sum.terms().size() == 2);
    CHECK(sum.coefficient_of(make_string(1.0, {{0, PauliAxis::Z}}).factors) ==
          doctest::Approx(0.75));

    // Exact cancellation removes the term entirely.
    sum.add(make_string(-0.75, {{0, PauliAxis::Z}}));
    CHECK(sum.terms().size() == 1);
    CHECK(sum.terms().front().factors.at(1) == PauliAxis::X);
}

TEST_CASE("pauli sum reports the qubit span") {
    PauliSum sum;
    sum.add(make_string(1.0, {{2, PauliAxis::Y}}));
    CHECK(sum.min_qubit_count() == 3);
    sum.add(make_string(1.0, {{5, PauliAxis::Z}}));
    CHECK(sum.min_qubit_count() == 6);
}

TEST_CASE("dense sum equals the sum of dense terms") {
    Rng rng(99);
    PauliSum sum;
    orc::Matrix expected = orc::Matrix::Zero(8, 8);
    for (int i = 0; i < 6; ++i) {
        const PauliString s = random_string(3, rng);
        sum.add(s);
        expected += orc::dense_pauli_matrix(s, 3);
    }
    CHECK((orc::dense_pauli_sum_matrix(sum, 3) - expected).cwiseAbs().maxCoeff() < 1e-12);
}
