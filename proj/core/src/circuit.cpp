#include "vhalab/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vhalab {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cnot";
    case GateKind::CZ: return "cz";
    }
    throw std::logic_error("unknown gate kind");
}

bool gate_kind_is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

std::size_t Circuit::gate_count() const {
    std::size_t n = 0;
    for (const auto& m : moments) n += m.gates.size();
    return n;
}

Gate& Circuit::gate_at(std::size_t flat_index) {
    std::size_t i = flat_index;
    for (auto& m : moments) {
        if (i < m.gates.size()) return m.gates[i];
        i -= m.gates.size();
    }
    throw std::out_of_range("flat gate index out of range");
}

const Gate& Circuit::gate_at(std::size_t flat_index) const {
    return const_cast<Circuit*>(this)->gate_at(flat_index);
}

void Circuit::check_valid() const {
    for (const auto& m : moments) {
        std::set<int> used;
        for (const auto& g : m.gates) {
            if (g.q0 < 0 || g.q0 >= n_qubits)
                throw std::invalid_argument("gate qubit out of range");
            if (!used.insert(g.q0).second)
                throw std::invalid_argument("qubit reused within a moment");
            if (g.arity() == 2) {
                if (g.q1 < 0 || g.q1 >= n_qubits)
                    throw std::invalid_argument("gate qubit out of range");
                if (g.q1 == g.q0)
                    throw std::invalid_argument("two-qubit gate with equal qubits");
                if (!used.insert(g.q1).second)
                    throw std::invalid_argument("qubit reused within a moment");
            }
        }
    }
}

ScheduleResult schedule_with_map(int n_qubits, const std::vector<Gate>& gates) {
    if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
    // next_free[q] is the earliest moment qubit q can still accept a gate
    std::vector<std::size_t> next_free(static_cast<std::size_t>(n_qubits), 0);
    std::vector<Moment> moments;
    std::vector<std::pair<std::size_t, std::size_t>> placement(gates.size()); // (moment, slot)

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.q0 < 0 || g.q0 >= n_qubits || (g.arity() == 2 && (g.q1 < 0 || g.q1 >= n_qubits)))
            throw std::invalid_argument("gate qubit out of range");
        if (g.arity() == 2 && g.q0 == g.q1)
            throw std::invalid_argument("two-qubit gate with equal qubits");
        std::size_t slot_moment = next_free[static_cast<std::size_t>(g.q0)];
        if (g.arity() == 2)
            slot_moment = std::max(slot_moment, next_free[static_cast<std::size_t>(g.q1)]);
        if (slot_moment >= moments.size()) moments.resize(slot_moment + 1);
        placement[i] = {slot_moment, moments[slot_moment].gates.size()};
        moments[slot_moment].gates.push_back(g);
        next_free[static_cast<std::size_t>(g.q0)] = slot_moment + 1;
        if (g.arity() == 2) next_free[static_cast<std::size_t>(g.q1)] = slot_moment + 1;
    }

    std::vector<std::size_t> offsets(moments.size() + 1, 0);
    for (std::size_t m = 0; m < moments.size(); ++m)
        offsets[m + 1] = offsets[m] + moments[m].gates.size();

    ScheduleResult result;
    result.circuit.n_qubits = n_qubits;
    result.circuit.moments = std::move(moments);
    result.input_to_flat.resize(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i)
        result.input_to_flat[i] = offsets[placement[i].first] + placement[i].second;
    return result;
}

Circuit schedule(int n_qubits, const std::vector<Gate>& gates) {
    return schedule_with_map(n_qubits, gates).circuit;
}

} // namespace vhalab
