#pragma once

#include <string>
#include <string_view>

#include "condgate/boards.hpp"
#include "condgate/control.hpp"
#include "condgate/markability.hpp"

namespace condgate {

enum class CircuitKind { Marking, Control };

// Circuit documents share one schema:
//   { "kind": "marking"|"control",
//     "wires": [ {"role": ..., "dim": d, "init": [[re,im],...]?}, ... ],
//     "slot": wire index of the unknown gate,
//     "pre": matrix, "post": matrix,
//     "partition": [[member indices]],
//     "outcomes": [state vectors, one per block] }
// Control circuits additionally carry "fixed_vector" and "representatives".
std::string marking_to_json(const MarkingCircuit& mc);
std::string control_to_json(const ControlCircuit& cc);

CircuitKind detect_circuit_kind(std::string_view text);

MarkingCircuit parse_marking_circuit(std::string_view text,
                                     num::Tolerance tol = {});
ControlCircuit parse_control_circuit(std::string_view text,
                                     num::Tolerance tol = {});

}  // namespace condgate
