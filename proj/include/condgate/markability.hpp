#pragma once

#include <optional>
#include <vector>

#include "condgate/discrimination.hpp"
#include "condgate/gateset.hpp"

namespace condgate {

// A circuit D (U (x) I) C acting on system (x) ancillas that forwards the
// unknown gate's action to the system wire and leaves an orthonormal label
// on the ancillas identifying the gate's partition block.
struct MarkingCircuit {
  std::size_t system_dim = 0;
  std::vector<std::size_t> ancilla_dims;  // each prepared in basis state 0
  num::CMatrix pre;                       // C
  num::CMatrix post;                      // D
  Partition partition = Partition::trivial(1);
  std::vector<num::CVector> outcomes;     // per block, on the ancilla space

  std::size_t ancilla_dim() const;
  std::size_t total_dim() const { return system_dim * ancilla_dim(); }
};

struct MarkabilityVerdict {
  bool markable = false;
  std::optional<Partition> partition;
  std::optional<num::CMatrix> basis_change;  // W: blocks (anti)diagonal in W
  bool used_prefix_inverse = false;
  // First non-scalar member of the original set; when the classification only
  // succeeded for the prefix-inverted set, the synthesized circuit folds this
  // back in.
  std::optional<num::CMatrix> prefix;
};

// Spans criterion for a two-block split of a qubit set: trivial span
// intersection and either both spans at most two-dimensional or the whole
// set jointly discriminable.
bool check_bipartition_markable_qubit(const GateSet& gs, const Partition& p);

// Diagonalize-and-classify procedure: the first non-scalar member fixes a
// basis W, members must each be diagonal or anti-diagonal in W (retried on
// the prefix-inverted set), and jointly discriminable sets of three or four
// refine to singletons.
MarkabilityVerdict minimal_partition_qubit(const GateSet& gs);

// Controlled-NOT sandwich in the classification basis (one ancilla qubit);
// delegates to the entangled-probe construction when the partition has more
// than two blocks. Output is verified before being returned.
MarkingCircuit synthesize_marking_qubit(const GateSet& gs,
                                        const MarkabilityVerdict& verdict);

// Marking for mutually HS-orthogonal sets in any dimension: the input parks
// in a holding register while half of a maximally entangled pair traverses
// the gate; the resulting orthonormal probe states are rotated onto label
// states and the held input is repaired per label.
MarkingCircuit synthesize_marking_joint(const GateSet& gs);

struct MarkingCheck {
  bool ok = false;
  double max_residual = 0.0;
  std::vector<double> residuals;  // per member, input order
};

// Checks D (U (x) I) C (I (x) |0...0>) = U (x) |n> for every member.
MarkingCheck verify_marking(const GateSet& gs, const MarkingCircuit& mc);

}  // namespace condgate
