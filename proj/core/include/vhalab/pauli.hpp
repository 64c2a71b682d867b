#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vhalab {

enum class PauliAxis : unsigned char { X, Y, Z };

char axis_letter(PauliAxis axis);

// Bit masks describing where a Pauli string acts.  Qubit q contributes
// bit (1 << q); valid for up to 64 qubits.
struct PauliMasks {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t z = 0;

    // Basis indices flip under X and Y factors.
    std::uint64_t flip() const { return x | y; }
    // Y and Z factors pick up (-1)^bit phases.
    std::uint64_t phase() const { return y | z; }
    // All qubits the string acts on.
    std::uint64_t support() const { return x | y | z; }
};

// One weighted Pauli product.  Identity factors are omitted from the
// map; an empty map is a scaled identity.  Coefficients are real, which
// is all a Hermitian sum of Hermitian strings needs.
struct PauliString {
    double coefficient = 1.0;
    std::map<int, PauliAxis> factors;

    PauliString() = default;
    PauliString(double coeff, std::map<int, PauliAxis> f)
        : coefficient(coeff), factors(std::move(f)) {}

    static PauliString identity(double coeff = 1.0) { return PauliString(coeff, {}); }

    bool is_identity() const { return factors.empty(); }
    int weight() const { return static_cast<int>(factors.size()); }
    // Largest qubit index touched, -1 for the identity.
    int max_qubit() const { return factors.empty() ? -1 : factors.rbegin()->first; }

    // Even symplectic overlap; coefficients are irrelevant.
    bool commutes_with(const PauliString& other) const;

    PauliMasks masks() const;

    // Human readable form such as "-0.5 * X0 X1" or "0.25 * I".
    std::string to_string() const;
};

// Product of the operator parts of two strings.  Returns the factor map
// of the product and the accumulated phase (a power of i); the returned
// string's coefficient is the product of the inputs' coefficients, with
// the phase reported separately so PauliString stays real.
std::pair<PauliString, std::complex<double>> pauli_product(const PauliString& a,
                                                           const PauliString& b);

// Sum of Pauli strings with unique factor maps.  Terms with identical
// factors merge on insertion; exact zeros are dropped.  Terms are kept
// sorted by factor map, so iteration order is deterministic.
class PauliSum {
public:
    PauliSum() = default;
    explicit PauliSum(const std::vector<PauliString>& terms);

    void add(const PauliString& term);
    void add(const PauliSum& other);

    const std::vector<PauliString>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Smallest qubit count that can host every term.
    int min_qubit_count() const;

    // Coefficient of the given factor map, 0 if absent.
    double coefficient_of(const std::map<int, PauliAxis>& factors) const;

    std::string to_string() const;

private:
    std::vector<PauliString> terms_;
};

} // namespace vhalab
