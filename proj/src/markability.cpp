#include "condgate/markability.hpp"

#include <cmath>

#include "condgate/decomp.hpp"
#include "condgate/tensor.hpp"

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;
using num::basis_state;
using num::kron;
using num::tensor;

std::size_t MarkingCircuit::ancilla_dim() const {
  return product_dim(ancilla_dims);
}

namespace {

bool proportional_to_identity(const CMatrix& m, num::Tolerance tol) {
  return num::equal_up_to_phase(m, CMatrix::identity(m.rows()), tol).equal;
}

enum class Pattern { Diagonal, AntiDiagonal, Neither };

Pattern classify_in_basis(const CMatrix& m, const CMatrix& w, double eps) {
  const CMatrix rotated = w.adjoint() * m * w;
  const double off = std::max(std::abs(rotated(0, 1)), std::abs(rotated(1, 0)));
  const double on = std::max(std::abs(rotated(0, 0)), std::abs(rotated(1, 1)));
  if (off <= eps) {
    return Pattern::Diagonal;
  }
  if (on <= eps) {
    return Pattern::AntiDiagonal;
  }
  return Pattern::Neither;
}

CMatrix eigenbasis(const CMatrix& u, num::Tolerance tol) {
  const std::vector<num::Eigenpair> pairs = num::eig_unitary(u, tol);
  CMatrix w(u.rows(), u.rows());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    w.set_col(j, pairs[j].vector);
  }
  return w;
}

struct Classification {
  std::vector<std::size_t> diagonal;
  std::vector<std::size_t> anti_diagonal;
};

std::optional<Classification> classify_all(const std::vector<CMatrix>& members,
                                           const CMatrix& w, double eps) {
  Classification out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    switch (classify_in_basis(members[i], w, eps)) {
      case Pattern::Diagonal:
        out.diagonal.push_back(i);
        break;
      case Pattern::AntiDiagonal:
        out.anti_diagonal.push_back(i);
        break;
      case Pattern::Neither:
        return std::nullopt;
    }
  }
  return out;
}

Partition partition_from(const Classification& c, std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks;
  if (!c.diagonal.empty()) {
    blocks.push_back(c.diagonal);
  }
  if (!c.anti_diagonal.empty()) {
    blocks.push_back(c.anti_diagonal);
  }
  return Partition(n, std::move(blocks));
}

// Controlled-NOT with the system as control and the ancilla qubit as target,
// conjugated into basis w on both wires' system side.
CMatrix cnot_sandwich(const CMatrix& w) {
  CMatrix cx(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = cdouble(1.0, 0.0);
  const CMatrix wi = kron(w, CMatrix::identity(2));
  return wi * cx * wi.adjoint();
}

}  // namespace

bool check_bipartition_markable_qubit(const GateSet& gs, const Partition& p) {
  if (gs.dimension() != 2) {
    throw NotQubit("check_bipartition_markable_qubit: gate set is not a qubit set");
  }
  if (p.n_blocks() != 2 || p.n_indices() != gs.size()) {
    throw RangeMismatch("check_bipartition_markable_qubit: expected a bipartition");
  }
  const auto gather = [&](std::size_t b) {
    std::vector<CMatrix> out;
    for (std::size_t idx : p.block(b)) {
      out.push_back(gs.member(idx).matrix);
    }
    return out;
  };
  const num::SpanDims dims = num::span_intersection_dim(gather(0), gather(1),
                                                        gs.tolerance());
  // A three-dimensional block span always obstructs a two-block marking:
  // the map M -> C^H (M (x) I) C (I (x) |0>) is linear in M, so the algebra
  // of a spanning triple forces inconsistent label overlaps. Joint
  // discriminability rescues the set (finer partitions exist), never the
  // bipartition itself.
  return dims.dim_intersection == 0 && dims.dim_a <= 2 && dims.dim_b <= 2;
}

MarkabilityVerdict minimal_partition_qubit(const GateSet& gs) {
  if (gs.dimension() != 2) {
    throw NotQubit("minimal_partition_qubit: gate set is not a qubit set");
  }
  const num::Tolerance tol = gs.tolerance();
  const double eps = tol.eps;
  const std::size_t n = gs.size();

  std::vector<CMatrix> members;
  members.reserve(n);
  for (const Unitary& u : gs.members()) {
    members.push_back(u.matrix);
  }

  std::size_t first_non_scalar = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!proportional_to_identity(members[i], tol)) {
      first_non_scalar = i;
      break;
    }
  }
  if (first_non_scalar == n) {
    // Every member is a phase times the identity.
    MarkabilityVerdict verdict;
    verdict.markable = true;
    verdict.partition = Partition::trivial(n);
    verdict.basis_change = CMatrix::identity(2);
    return verdict;
  }

  MarkabilityVerdict verdict;
  std::optional<Classification> classification;

  const CMatrix w1 = eigenbasis(members[first_non_scalar], tol);
  classification = classify_all(members, w1, eps);
  if (classification.has_value()) {
    verdict.basis_change = w1;
  } else {
    // Retry on the prefix-inverted set U^H * gs.
    const CMatrix prefix = members[first_non_scalar];
    const CMatrix prefix_adj = prefix.adjoint();
    std::vector<CMatrix> primed;
    primed.reserve(n);
    for (const CMatrix& m : members) {
      primed.push_back(prefix_adj * m);
    }
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!proportional_to_identity(primed[i], tol)) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      verdict.markable = false;
      return verdict;
    }
    const CMatrix w2 = eigenbasis(primed[pivot], tol);
    classification = classify_all(primed, w2, eps);
    if (!classification.has_value()) {
      verdict.markable = false;
      return verdict;
    }
    verdict.basis_change = w2;
    verdict.used_prefix_inverse = true;
    verdict.prefix = prefix;
  }

  verdict.markable = true;
  verdict.partition = partition_from(*classification, n);

  // Sets of three or four jointly discriminable unitaries split all the way
  // down to singleton blocks.
  if ((n == 3 || n == 4) && jointly_discriminable(gs) == Verdict::Yes) {
    verdict.partition = Partition::singletons(n);
  }
  return verdict;
}

MarkingCircuit synthesize_marking_qubit(const GateSet& gs,
                                        const MarkabilityVerdict& verdict) {
  if (gs.dimension() != 2) {
    throw NotQubit("synthesize_marking_qubit: gate set is not a qubit set");
  }
  if (!verdict.markable || !verdict.partition.has_value()) {
    throw NotMarkable("synthesize_marking_qubit: set is not markable");
  }
  const Partition& partition = *verdict.partition;
  if (partition.n_indices() != gs.size()) {
    throw RangeMismatch("synthesize_marking_qubit: partition does not match set");
  }

  if (partition.n_blocks() > 2) {
    return synthesize_marking_joint(gs);
  }

  MarkingCircuit mc;
  mc.system_dim = 2;
  mc.partition = partition;

  if (partition.n_blocks() <= 1) {
    mc.ancilla_dims = {1};
    mc.pre = CMatrix::identity(2);
    mc.post = CMatrix::identity(2);
    mc.outcomes = {CVector(std::vector<cdouble>{cdouble(1.0, 0.0)})};
  } else {
    if (!verdict.basis_change.has_value()) {
      throw NotMarkable("synthesize_marking_qubit: missing classification basis");
    }
    const CMatrix sandwich = cnot_sandwich(*verdict.basis_change);
    mc.ancilla_dims = {2};
    mc.pre = sandwich;
    mc.post = sandwich;
    if (verdict.used_prefix_inverse) {
      if (!verdict.prefix.has_value()) {
        throw NotMarkable("synthesize_marking_qubit: missing prefix unitary");
      }
      const CMatrix lift = kron(*verdict.prefix, CMatrix::identity(2));
      mc.post = lift * sandwich * lift.adjoint();
    }
    mc.outcomes = {basis_state(2, 0), basis_state(2, 1)};
  }

  const MarkingCheck check = verify_marking(gs, mc);
  if (!check.ok) {
    throw MarkingInvalid("synthesize_marking_qubit: self-verification failed");
  }
  return mc;
}

MarkingCircuit synthesize_marking_joint(const GateSet& gs) {
  const num::Tolerance tol = gs.tolerance();
  const std::size_t d = gs.dimension();
  const std::size_t n = gs.size();
  const double scale = std::sqrt(static_cast<double>(d));

  // The construction needs orthonormal probe states (1/sqrt(d)) vec(U_n).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(hs_inner(gs.member(i), gs.member(j))) >
          tol.eps * static_cast<double>(d)) {
        throw NotJointlyDiscriminable(
            "synthesize_marking_joint: members are not mutually HS-orthogonal");
      }
    }
  }

  const std::vector<std::size_t> wires = {d, d, d};  // system, partner, hold

  // Entangler: basis state 0 of (system, partner) to the maximally
  // entangled state.
  CVector omega(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    omega[i * d + i] = cdouble(1.0 / scale, 0.0);
  }
  const CMatrix entangler = num::complete_unitary({omega}, d * d);

  // Probe rotation: orthonormal probe states onto label basis states.
  std::vector<CVector> probes;
  probes.reserve(n);
  for (const Unitary& u : gs.members()) {
    probes.push_back(u.matrix.vec().scaled(cdouble(1.0 / scale, 0.0)));
  }
  const CMatrix label_change = num::complete_unitary(probes, d * d).adjoint();

  // Per-label repair of the held input.
  CMatrix repair(d * d * d, d * d * d);
  CMatrix residual_projector = CMatrix::identity(d * d);
  for (std::size_t k = 0; k < n; ++k) {
    CMatrix proj(d * d, d * d);
    proj(k, k) = cdouble(1.0, 0.0);
    residual_projector = residual_projector - proj;
    repair = repair + kron(proj, gs.member(k).matrix);
  }
  repair = repair + kron(residual_projector, CMatrix::identity(d));

  const CMatrix park = swap_wires(wires, 0, 2);

  MarkingCircuit mc;
  mc.system_dim = d;
  mc.ancilla_dims = {d, d};
  mc.pre = embed_operator(entangler, wires, {0, 1}) * park;
  mc.post = park * repair * embed_operator(label_change, wires, {0, 1});
  mc.partition = Partition::singletons(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k / d;
    const std::size_t b = k % d;
    mc.outcomes.push_back(tensor(basis_state(d, b), basis_state(d, a)));
  }

  const MarkingCheck check = verify_marking(gs, mc);
  if (!check.ok) {
    throw MarkingInvalid("synthesize_marking_joint: self-verification failed");
  }
  return mc;
}

MarkingCheck verify_marking(const GateSet& gs, const MarkingCircuit& mc) {
  if (gs.dimension() != mc.system_dim) {
    throw ShapeMismatch("verify_marking: system dimension mismatch");
  }
  const std::size_t total = mc.total_dim();
  if (mc.pre.rows() != total || mc.pre.cols() != total ||
      mc.post.rows() != total || mc.post.cols() != total) {
    throw ShapeMismatch("verify_marking: circuit dimension mismatch");
  }
  if (mc.partition.n_indices() != gs.size() ||
      mc.outcomes.size() != mc.partition.n_blocks()) {
    throw ShapeMismatch("verify_marking: partition or outcomes mismatch");
  }
  for (const CVector& o : mc.outcomes) {
    if (o.dim() != mc.ancilla_dim()) {
      throw ShapeMismatch("verify_marking: outcome state dimension mismatch");
    }
  }

  std::vector<std::size_t> wires = {mc.system_dim};
  std::vector<std::optional<CVector>> inits = {std::nullopt};
  for (std::size_t a : mc.ancilla_dims) {
    wires.push_back(a);
    inits.emplace_back(basis_state(a, 0));
  }
  const CMatrix ready = input_isometry(wires, inits);

  MarkingCheck check;
  check.ok = true;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::size_t block = mc.partition.block_of(i);
    const CMatrix realized =
        mc.post * embed_operator(gs.member(i).matrix, wires, {0}) * mc.pre *
        ready;
    const CMatrix expected =
        kron(gs.member(i).matrix, CMatrix::column(mc.outcomes[block]));
    const double residual = (realized - expected).frobenius_norm();
    check.residuals.push_back(residual);
    check.max_residual = std::max(check.max_residual, residual);
  }
  check.ok = check.max_residual <=
             gs.tolerance().eps * static_cast<double>(gs.dimension());
  return check;
}

}  // namespace condgate
