#include "vhalab/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vhalab {

char axis_letter(PauliAxis axis) {
    switch (axis) {
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
    }
    throw std::logic_error("unknown Pauli axis");
}

bool PauliString::commutes_with(const PauliString& other) const {
    int anticommuting = 0;
    auto it = factors.begin();
    auto jt = other.factors.begin();
    while (it != factors.end() && jt != other.factors.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            if (it->second != jt->second) ++anticommuting;
            ++it;
            ++jt;
        }
    }
    return anticommuting % 2 == 0;
}

PauliMasks PauliString::masks() const {
    PauliMasks m;
    for (const auto& [q, axis] : factors) {
        if (q < 0 || q >= 64) throw std::out_of_range("qubit index outside mask range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (axis) {
        case PauliAxis::X: m.x |= bit; break;
        case PauliAxis::Y: m.y |= bit; break;
        case PauliAxis::Z: m.z |= bit; break;
        }
    }
    return m;
}

std::string PauliString::to_string() const {
    std::ostringstream out;
    out << coefficient << " *";
    if (factors.empty()) {
        out << " I";
    } else {
        for (const auto& [q, axis] : factors) out << ' ' << axis_letter(axis) << q;
    }
    return out.str();
}

namespace {

// sigma_a * sigma_b = phase * sigma_c for a != b, with phase in {+i, -i}.
// Rows/cols indexed by PauliAxis order X, Y, Z.
struct SingleProduct {
    PauliAxis axis;
    std::complex<double> phase;
};

SingleProduct single_product(PauliAxis a, PauliAxis b) {
    using C = std::complex<double>;
    static constexpr C plus_i{0.0, 1.0};
    static constexpr C minus_i{0.0, -1.0};
    if (a == b) throw std::logic_error("identical axes handled by caller");
    if (a == PauliAxis::X && b == PauliAxis::Y) return {PauliAxis::Z, plus_i};
    if (a == PauliAxis::Y && b == PauliAxis::X) return {PauliAxis::Z, minus_i};
    if (a == PauliAxis::Y && b == PauliAxis::Z) return {PauliAxis::X, plus_i};
    if (a == PauliAxis::Z && b == PauliAxis::Y) return {PauliAxis::X, minus_i};
    if (a == PauliAxis::Z && b == PauliAxis::X) return {PauliAxis::Y, plus_i};
    return {PauliAxis::Y, minus_i}; // X * Z
}

} // namespace

std::pair<PauliString, std::complex<double>> pauli_product(const PauliString& a,
                                                           const PauliString& b) {
    PauliString out;
    out.coefficient = a.coefficient * b.coefficient;
    std::complex<double> phase{1.0, 0.0};
    auto it = a.factors.begin();
    auto jt = b.factors.begin();
    while (it != a.factors.end() || jt != b.factors.end()) {
        if (jt == b.factors.end() || (it != a.factors.end() && it->first < jt->first)) {
            out.factors.emplace(it->first, it->second);
            ++it;
        } else if (it == a.factors.end() || jt->first < it->first) {
            out.factors.emplace(jt->first, jt->second);
            ++jt;
        } else {
            if (it->second != jt->second) {
                const SingleProduct p = single_product(it->second, jt->second);
                out.factors.emplace(it->first, p.axis);
                phase *= p.phase;
            } // equal axes multiply to the identity
            ++it;
            ++jt;
        }
    }
    return {std::move(out), phase};
}

PauliSum::PauliSum(const std::vector<PauliString>& terms) {
    for (const auto& t : terms) add(t);
}

void PauliSum::add(const PauliString& term) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                               [](const PauliString& lhs, const PauliString& rhs) {
                                   return lhs.factors < rhs.factors;
                               });
    if (it != terms_.end() && it->factors == term.factors) {
        it->coefficient += term.coefficient;
        if (it->coefficient == 0.0) terms_.erase(it);
    } else if (term.coefficient != 0.0) {
        terms_.insert(it, term);
    }
}

void PauliSum::add(const PauliSum& other) {
    for (const auto& t : other.terms_) add(t);
}

int PauliSum::min_qubit_count() const {
    int top = -1;
    for (const auto& t : terms_) top = std::max(top, t.max_qubit());
    return top + 1;
}

double PauliSum::coefficient_of(const std::map<int, PauliAxis>& factors) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), factors,
                               [](const PauliString& lhs, const std::map<int, PauliAxis>& rhs) {
                                   return lhs.factors < rhs;
                               });
    if (it != terms_.end() && it->factors == factors) return it->coefficient;
    return 0.0;
}

std::string PauliSum::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out << "  +  ";
        out << terms_[i].to_string();
    }
    return out.str();
}

} // namespace vhalab
