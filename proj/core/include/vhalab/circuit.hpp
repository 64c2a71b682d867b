#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vhalab {

enum class GateKind : unsigned char { RX, RY, RZ, H, X, CNOT, CZ };

const char* gate_kind_name(GateKind kind);
bool gate_kind_is_rotation(GateKind kind);

// One gate.  q1 is -1 for single-qubit gates; for CNOT q0 is the
// control and q1 the target.  Rotations follow R_a(mu) = exp(-i mu sigma_a / 2).
struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    static Gate rx(int q, double angle) { return {GateKind::RX, q, -1, angle}; }
    static Gate ry(int q, double angle) { return {GateKind::RY, q, -1, angle}; }
    static Gate rz(int q, double angle) { return {GateKind::RZ, q, -1, angle}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b, 0.0}; }

    int arity() const { return q1 < 0 ? 1 : 2; }
    bool is_rotation() const { return gate_kind_is_rotation(kind); }
};

// Gates executed in parallel on pairwise disjoint qubits.
struct Moment {
    std::vector<Gate> gates;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Moment> moments;

    std::size_t gate_count() const;

    // Flat index counts gates moment by moment, in order within each
    // moment.  Out of range indices throw.
    Gate& gate_at(std::size_t flat_index);
    const Gate& gate_at(std::size_t flat_index) const;

    // Throws std::invalid_argument if a qubit index is out of range or
    // a moment reuses a qubit.
    void check_valid() const;
};

// Greedy left-alignment: each gate lands in the earliest moment where
// all its qubits are free; gates sharing a qubit keep their order.
Circuit schedule(int n_qubits, const std::vector<Gate>& gates);

// Like schedule, but also reports where each input gate ended up as a
// flat index into the scheduled circuit.
struct ScheduleResult {
    Circuit circuit;
    std::vector<std::size_t> input_to_flat;
};
ScheduleResult schedule_with_map(int n_qubits, const std::vector<Gate>& gates);

} // namespace vhalab
