#include "vhalab/ansatz.hpp"

#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

namespace vhalab {

RotationGadget exp_pauli_rotation(const PauliString& term) {
    // An identity term is a global phase, unobservable in any
    // expectation value: no gates and no binding.
    if (term.is_identity()) return {};

    constexpr double half_pi = std::numbers::pi / 2.0;
    std::vector<int> qubits;
    std::vector<Gate> enter, leave;
    for (const auto& [q, axis] : term.factors) {
        qubits.push_back(q);
        if (axis == PauliAxis::X) {
            enter.push_back(Gate::h(q));
            leave.push_back(Gate::h(q));
        } else if (axis == PauliAxis::Y) {
            // RX(pi/2) Y RX(-pi/2) = Z
            enter.push_back(Gate::rx(q, half_pi));
            leave.push_back(Gate::rx(q, -half_pi));
        }
    }

    RotationGadget gadget;
    gadget.slope = -2.0 * term.coefficient;
    gadget.gates = enter;
    for (std::size_t i = 0; i + 1 < qubits.size(); ++i)
        gadget.gates.push_back(Gate::cnot(qubits[i], qubits[i + 1]));
    gadget.rz_position = gadget.gates.size();
    gadget.gates.push_back(Gate::rz(qubits.back(), 0.0));
    for (std::size_t i = qubits.size() - 1; i-- > 0;)
        gadget.gates.push_back(Gate::cnot(qubits[i], qubits[i + 1]));
    gadget.gates.insert(gadget.gates.end(), leave.begin(), leave.end());
    return gadget;
}

CompiledAnsatz compile(const VhaAnsatz& ansatz) {
    if (ansatz.repetitions < 1) throw std::invalid_argument("repetition count must be at least 1");
    const auto& parts = ansatz.decomposition.parts;
    if (parts.empty()) throw std::invalid_argument("decomposition has no parts");

    for (const auto& [label, part] : parts) {
        const auto& terms = part.terms();
        for (std::size_t i = 0; i < terms.size(); ++i)
            for (std::size_t j = i + 1; j < terms.size(); ++j)
                if (!terms[i].commutes_with(terms[j]))
                    throw std::logic_error("part " + label + " contains non-commuting terms");
    }

    CompiledAnsatz compiled;
    compiled.parts_per_repetition = static_cast<int>(parts.size());
    compiled.repetitions = ansatz.repetitions;

    std::vector<Gate> gates;
    std::vector<std::pair<std::size_t, double>> slots; // (position in gates, slope)
    std::vector<int> slot_theta;
    for (int k = 0; k < ansatz.repetitions; ++k) {
        for (std::size_t alpha = 0; alpha < parts.size(); ++alpha) {
            const int theta_index = k * compiled.parts_per_repetition + static_cast<int>(alpha);
            compiled.generators.emplace_back(parts[alpha].first, parts[alpha].second.terms());
            for (const auto& term : parts[alpha].second.terms()) {
                RotationGadget gadget = exp_pauli_rotation(term);
                if (gadget.gates.empty()) continue; // identity term, dropped phase
                slots.emplace_back(gates.size() + gadget.rz_position, gadget.slope);
                slot_theta.push_back(theta_index);
                gates.insert(gates.end(), gadget.gates.begin(), gadget.gates.end());
            }
        }
    }

    ScheduleResult scheduled = schedule_with_map(ansatz.decomposition.n_qubits, gates);
    compiled.circuit = std::move(scheduled.circuit);
    compiled.bindings.reserve(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s)
        compiled.bindings.push_back(
            {scheduled.input_to_flat[slots[s].first], slot_theta[s], slots[s].second});
    return compiled;
}

Circuit bind(const CompiledAnsatz& compiled, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != compiled.parameter_count())
        throw std::invalid_argument("theta length does not match the parameter count");
    Circuit circuit = compiled.circuit;
    for (const auto& b : compiled.bindings) {
        Gate& gate = circuit.gate_at(b.gate_index);
        gate.angle = b.slope * theta[static_cast<std::size_t>(b.theta_index)];
    }
    return circuit;
}

CountReport count_report(const CompiledAnsatz& compiled) {
    return {compiled.parts_per_repetition, compiled.repetitions,
            compiled.parametrized_gate_count()};
}

std::string circuit_template_json(const CompiledAnsatz& compiled) {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = compiled.circuit.n_qubits;
    doc["parameters"] = compiled.parameter_count();
    doc["repetitions"] = compiled.repetitions;
    doc["parts_per_repetition"] = compiled.parts_per_repetition;

    nlohmann::ordered_json moments = nlohmann::ordered_json::array();
    std::size_t flat = 0;
    for (const auto& moment : compiled.circuit.moments) {
        nlohmann::ordered_json gates = nlohmann::ordered_json::array();
        for (const auto& gate : moment.gates) {
            nlohmann::ordered_json g;
            g["index"] = flat++;
            g["kind"] = gate_kind_name(gate.kind);
            if (gate.arity() == 2)
                g["qubits"] = {gate.q0, gate.q1};
            else
                g["qubits"] = {gate.q0};
            if (gate.is_rotation()) g["angle"] = gate.angle;
            gates.push_back(std::move(g));
        }
        moments.push_back(std::move(gates));
    }
    doc["moments"] = std::move(moments);

    nlohmann::ordered_json bindings = nlohmann::ordered_json::array();
    for (const auto& b : compiled.bindings)
        bindings.push_back({{"gate", b.gate_index},
                            {"theta_index", b.theta_index},
                            {"slope", b.slope}});
    doc["bindings"] = std::move(bindings);

    nlohmann::ordered_json generators = nlohmann::ordered_json::array();
    for (const auto& [label, terms] : compiled.generators) {
        nlohmann::ordered_json entry;
        entry["part"] = label;
        nlohmann::ordered_json term_list = nlohmann::ordered_json::array();
        for (const auto& term : terms) term_list.push_back(term.to_string());
        entry["terms"] = std::move(term_list);
        generators.push_back(std::move(entry));
    }
    doc["generators"] = std::move(generators);
    return doc.dump(2);
}

} // namespace vhalab
