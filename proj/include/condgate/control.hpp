#pragma once

#include <optional>
#include <vector>

#include "condgate/markability.hpp"

namespace condgate {

// Unit vector psi with V_n^H U psi = c psi for every member U of block n,
// V_n the block's first member. Strict witnesses have every c = 1.
struct FixedVector {
  num::CVector psi;
  // block_phases[b][k]: phase for the k-th member of block b, block order.
  std::vector<std::vector<num::cdouble>> block_phases;
};

enum class FixedVectorMode { Strict, Projective };

// Strict: intersects the null spaces of (V_n^H U - I). Projective: finds a
// common eigenvector of the family {V_n^H U} by branching over eigenspaces
// of one member and intersecting restricted eigenspaces recursively.
std::optional<FixedVector> solve_fixed_vector(const GateSet& gs,
                                              const Partition& p,
                                              FixedVectorMode mode);

// Rescales each member of block n by the recorded phase so the strict
// relation V_n^H U psi = psi holds for the output.
GateSet align_representatives(const GateSet& gs, const Partition& p,
                              const FixedVector& fv);

// Wiring that realizes B (U (x) I) A (I (x) |init>) = (I (+) U) (x) psi_U.
// Wire 0 is the control qubit, wire 1 the system; the unknown gate inserts
// on slot_wire.
struct ControlCircuit {
  explicit ControlCircuit(GateSet reps) : representatives(std::move(reps)) {}

  std::vector<std::size_t> wire_dims;
  std::size_t slot_wire = 1;
  std::vector<std::optional<num::CVector>> inits;  // control, system open
  num::CMatrix pre;   // A
  num::CMatrix post;  // B
  MarkingCircuit marking;
  num::CMatrix correction;  // acts on the wires right of the system
  bool correction_on_idle_branch = false;  // applied when control = 0
  GateSet representatives;
  Partition partition = Partition::trivial(1);
  num::CVector fixed_vector;
  // Declared state of the non-(control, system) wires, per member.
  std::vector<num::CVector> declared_outputs;
  bool single_ancilla_form = false;

  std::size_t system_dim() const { return wire_dims[1]; }
  std::size_t total_dim() const;
};

struct ControllabilityDecision {
  bool controllable = false;
  std::optional<Partition> partition;
  std::optional<FixedVector> fixed_vector;
  std::optional<GateSet> representatives;  // aligned
  MarkabilityVerdict markability;
};

// Controllability reduces to the existence of a projective fixed vector on
// the minimal markable partition; a nontrivially markable set always has one
// and a commuting set's common eigenvector supplies one, so both sufficient
// clauses fall out of the same search.
ControllabilityDecision decide_controllable_qubit(const GateSet& gs);

// General construction: controlled swap routes the input through the marking
// circuit on a register prepared in psi, and the per-label correction
// T = sum_n V_n^H (x) |n><n| undoes the register's traversal. T fires only on
// the control branch in which psi passed through the gate; applied on both
// branches it would shift the parked register and decohere the control.
ControlCircuit synthesize_control_general(const GateSet& gs,
                                          const MarkingCircuit& mc,
                                          const FixedVector& fv);

// Three-wire qubit form (control, system, one ancilla): swaps conditioned on
// control = 0, basis-dressed controlled-NOTs conditioned on control = 1.
// Falls back to the general construction when the members lack the
// diagonal/anti-diagonal structure in the classification basis.
ControlCircuit synthesize_control_qubit(const GateSet& gs,
                                        const ControllabilityDecision& decision);

struct ControlCheck {
  bool ok = false;
  double max_residual = 0.0;
  std::vector<double> residuals;  // per member, input order
  std::vector<num::CVector> psi_states;
};

// Compares the realized isometry against (I (+) U) (x) psi_U per member,
// extracting psi_U by contraction and requiring it to match the declared
// output.
ControlCheck verify_control(const GateSet& gs, const ControlCircuit& cc);

struct EstimateBeforeUse {
  bool possible = false;
  bool blocks_proportional = false;
};

// Labels available before the gate acts require joint discriminability;
// blocks_proportional records whether every same-block pair represents the
// same gate on the partition used.
EstimateBeforeUse decide_estimate_before_use(const GateSet& gs);

}  // namespace condgate
