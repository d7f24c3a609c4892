#pragma once

#include <optional>
#include <vector>

#include "condgate/control.hpp"
#include "condgate/gateset.hpp"

namespace condgate {

enum class WireRole { System, Control, Ancilla, Outcome };

struct Wire {
  WireRole role = WireRole::Ancilla;
  std::size_t dim = 0;
  std::optional<num::CVector> init;  // open input when absent
};

// A fixed circuit with open slots for an unknown gate: the gate inserts on
// slot_wire between consecutive stages, so k+1 stages mean k uses. Single-use
// boards have exactly a pre and a post stage.
struct CircuitBoard {
  std::vector<Wire> wires;
  std::size_t slot_wire = 0;
  std::vector<num::CMatrix> stages;

  std::size_t uses() const { return stages.size() - 1; }
  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
};

CircuitBoard board_from_marking(const MarkingCircuit& mc);
CircuitBoard board_from_control(const ControlCircuit& cc);

// stages.back() * (m ...) * stages[0] * (I (x) |init>), inserting m on the
// slot wire at every use. Linear in m; m need not be unitary.
num::CMatrix apply_board(const CircuitBoard& board, const num::CMatrix& m);

// Sequential two-use board: a second copy of the single-use board runs on
// fresh ancillas, so the side state doubles to psi (x) psi.
CircuitBoard double_board(const CircuitBoard& board);

// Gram matrix <psi_i | psi_j> of the side states a non-disturbing board
// attaches to each member. Throws Disturbing when some member's system
// action is not preserved.
num::CMatrix psi_gram_matrix(const CircuitBoard& board, const GateSet& gs);

struct SideFactorization {
  bool ok = false;
  double residual = 0.0;
  num::CVector side;
};

// Least-squares rank-one split of a realized isometry against the expected
// system action.
SideFactorization extract_side_state(const num::CMatrix& realized,
                                     const num::CMatrix& expected_action);

}  // namespace condgate
