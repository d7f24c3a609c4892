#include "condgate/control.hpp"

#include <algorithm>
#include <cmath>

#include "condgate/decomp.hpp"
#include "condgate/tensor.hpp"

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;
using num::basis_state;
using num::dot;
using num::kron;
using num::tensor;

std::size_t ControlCircuit::total_dim() const {
  return product_dim(wire_dims);
}

namespace {

struct FamilyMember {
  std::size_t block;
  std::size_t slot;  // position within the block
  CMatrix relation;  // V_n^H U
};

std::vector<FamilyMember> relation_family(const GateSet& gs,
                                          const Partition& p) {
  std::vector<FamilyMember> family;
  for (std::size_t b = 0; b < p.n_blocks(); ++b) {
    const std::vector<std::size_t>& block = p.block(b);
    const CMatrix anchor_adj = gs.member(block.front()).matrix.adjoint();
    for (std::size_t k = 0; k < block.size(); ++k) {
      family.push_back({b, k, anchor_adj * gs.member(block[k]).matrix});
    }
  }
  return family;
}

bool scalar_relation(const CMatrix& m, num::Tolerance tol) {
  return num::equal_up_to_phase(m, CMatrix::identity(m.rows()), tol).equal;
}

// Eigenspaces of a unitary, grouped by eigenvalue cluster, in angle order.
std::vector<std::vector<CVector>> eigenspaces(const CMatrix& u,
                                              num::Tolerance tol) {
  const std::vector<num::Eigenpair> pairs = num::eig_unitary(u, tol);
  const double gap = std::max(tol.eps, 1e-8);
  std::vector<std::vector<CVector>> spaces;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!spaces.empty() &&
        std::abs(pairs[i].value - pairs[i - 1].value) <= gap) {
      spaces.back().push_back(pairs[i].vector);
    } else {
      spaces.push_back({pairs[i].vector});
    }
  }
  return spaces;
}

std::optional<CVector> common_eigenvector(
    const std::vector<const CMatrix*>& family, std::size_t index,
    const std::vector<CVector>& candidate, num::Tolerance tol) {
  if (candidate.empty()) {
    return std::nullopt;
  }
  if (index == family.size()) {
    return candidate.front();
  }
  for (const std::vector<CVector>& space : eigenspaces(*family[index], tol)) {
    const std::vector<CVector> meet =
        num::subspace_intersection(candidate, space, tol);
    if (const auto found = common_eigenvector(family, index + 1, meet, tol)) {
      return found;
    }
  }
  return std::nullopt;
}

std::optional<FixedVector> finish_witness(const GateSet& gs, const Partition& p,
                                          CVector psi, num::Tolerance tol) {
  psi = psi.normalized();
  FixedVector fv;
  fv.block_phases.resize(p.n_blocks());
  for (const FamilyMember& fm : relation_family(gs, p)) {
    const CVector image = fm.relation.apply(psi);
    cdouble c = dot(psi, image);
    const double mod = std::abs(c);
    if (mod < 0.5) {
      return std::nullopt;
    }
    c /= mod;
    if ((image - psi.scaled(c)).norm() >
        std::max(100.0 * tol.eps, 1e-10) * std::sqrt(2.0)) {
      return std::nullopt;
    }
    fv.block_phases[fm.block].push_back(c);
  }
  fv.psi = std::move(psi);
  return fv;
}

}  // namespace

std::optional<FixedVector> solve_fixed_vector(const GateSet& gs,
                                              const Partition& p,
                                              FixedVectorMode mode) {
  if (p.n_indices() != gs.size()) {
    throw RangeMismatch("solve_fixed_vector: partition does not match set");
  }
  const num::Tolerance tol = gs.tolerance();
  const std::size_t d = gs.dimension();
  const std::vector<FamilyMember> family = relation_family(gs, p);

  if (mode == FixedVectorMode::Strict) {
    std::vector<CMatrix> constraints;
    for (const FamilyMember& fm : family) {
      constraints.push_back(fm.relation - CMatrix::identity(d));
    }
    CMatrix stacked(constraints.size() * d, d);
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          stacked(k * d + i, j) = constraints[k](i, j);
        }
      }
    }
    const std::vector<CVector> basis = num::null_space(stacked, tol);
    if (basis.empty()) {
      return std::nullopt;
    }
    return finish_witness(gs, p, basis.front(), tol);
  }

  // Projective: branch over eigenspaces; members proportional to the
  // identity constrain nothing beyond their phase.
  std::vector<const CMatrix*> nontrivial;
  for (const FamilyMember& fm : family) {
    if (!scalar_relation(fm.relation, tol)) {
      nontrivial.push_back(&fm.relation);
    }
  }
  std::vector<CVector> whole;
  for (std::size_t i = 0; i < d; ++i) {
    whole.push_back(basis_state(d, i));
  }
  const std::optional<CVector> psi =
      common_eigenvector(nontrivial, 0, whole, tol);
  if (!psi.has_value()) {
    return std::nullopt;
  }
  return finish_witness(gs, p, *psi, tol);
}

GateSet align_representatives(const GateSet& gs, const Partition& p,
                              const FixedVector& fv) {
  if (p.n_indices() != gs.size()) {
    throw RangeMismatch("align_representatives: partition does not match set");
  }
  const num::Tolerance tol = gs.tolerance();
  if (fv.psi.dim() != gs.dimension() ||
      fv.block_phases.size() != p.n_blocks()) {
    throw InvalidWitness("align_representatives: witness shape mismatch");
  }
  const double slack = std::max(100.0 * tol.eps, 1e-10) * 2.0;

  std::vector<Unitary> aligned = gs.members();
  for (std::size_t b = 0; b < p.n_blocks(); ++b) {
    const std::vector<std::size_t>& block = p.block(b);
    if (fv.block_phases[b].size() != block.size()) {
      throw InvalidWitness("align_representatives: witness phases mismatch");
    }
    const CMatrix anchor_adj = gs.member(block.front()).matrix.adjoint();
    for (std::size_t k = 0; k < block.size(); ++k) {
      const cdouble c = fv.block_phases[b][k];
      if (std::abs(std::abs(c) - 1.0) > 1e-6) {
        throw InvalidWitness("align_representatives: phase is not unit modulus");
      }
      const CVector image =
          (anchor_adj * gs.member(block[k]).matrix).apply(fv.psi);
      if ((image - fv.psi.scaled(c)).norm() > slack) {
        throw InvalidWitness(
            "align_representatives: witness fails its defining relation");
      }
      aligned[block[k]].matrix =
          std::conj(c) * gs.member(block[k]).matrix;
    }
  }
  return GateSet(gs.dimension(), std::move(aligned), tol);
}

ControllabilityDecision decide_controllable_qubit(const GateSet& gs) {
  if (gs.dimension() != 2) {
    throw NotQubit("decide_controllable_qubit: gate set is not a qubit set");
  }
  ControllabilityDecision decision;
  decision.markability = minimal_partition_qubit(gs);
  const Partition partition =
      (decision.markability.markable && decision.markability.partition)
          ? *decision.markability.partition
          : Partition::trivial(gs.size());
  const std::optional<FixedVector> fv =
      solve_fixed_vector(gs, partition, FixedVectorMode::Projective);
  if (!fv.has_value()) {
    decision.controllable = false;
    return decision;
  }
  decision.controllable = true;
  decision.partition = partition;
  decision.fixed_vector = fv;
  decision.representatives = align_representatives(gs, partition, *fv);
  return decision;
}

ControlCircuit synthesize_control_general(const GateSet& gs,
                                          const MarkingCircuit& mc,
                                          const FixedVector& fv) {
  const num::Tolerance tol = gs.tolerance();
  const std::size_t d = gs.dimension();

  const MarkingCheck marking_check = verify_marking(gs, mc);
  if (!marking_check.ok) {
    throw MarkingInvalid("synthesize_control_general: marking circuit fails");
  }
  if (fv.psi.dim() != d) {
    throw FixedVectorInvalid("synthesize_control_general: wrong witness dimension");
  }
  // The construction needs the strict relation on the marking partition.
  const double slack = std::max(100.0 * tol.eps, 1e-10) * 2.0;
  for (const FamilyMember& fm : relation_family(gs, mc.partition)) {
    if ((fm.relation.apply(fv.psi) - fv.psi).norm() > slack) {
      throw FixedVectorInvalid(
          "synthesize_control_general: witness is not strict on the partition");
    }
  }

  std::vector<std::size_t> wires = {2, d, d};
  std::vector<std::optional<CVector>> inits = {std::nullopt, std::nullopt,
                                               fv.psi.normalized()};
  std::vector<std::size_t> register_wires = {2};
  for (std::size_t a : mc.ancilla_dims) {
    register_wires.push_back(wires.size());
    wires.push_back(a);
    inits.emplace_back(basis_state(a, 0));
  }

  const CMatrix routed_swap = controlled_branch(
      swap_wires(std::vector<std::size_t>(wires.begin() + 1, wires.end()), 0, 1),
      wires, 0, 1);
  const CMatrix pre_marking = embed_operator(mc.pre, wires, register_wires);
  const CMatrix post_marking = embed_operator(mc.post, wires, register_wires);

  // T = sum_n V_n^H (x) |n><n|, completed with the identity off the label
  // subspace.
  const std::size_t anc_dim = mc.ancilla_dim();
  CMatrix correction(d * anc_dim, d * anc_dim);
  CMatrix label_projector(anc_dim, anc_dim);
  for (std::size_t b = 0; b < mc.partition.n_blocks(); ++b) {
    const CMatrix anchor_adj =
        gs.member(mc.partition.block(b).front()).matrix.adjoint();
    const CMatrix outcome = CMatrix::column(mc.outcomes[b]);
    const CMatrix proj = outcome * outcome.adjoint();
    label_projector = label_projector + proj;
    correction = correction + kron(anchor_adj, proj);
  }
  correction = correction +
               kron(CMatrix::identity(d),
                    CMatrix::identity(anc_dim) - label_projector);

  const CMatrix idle_correction = controlled_branch(
      kron(CMatrix::identity(d), correction), wires, 0, 0);

  ControlCircuit cc(gs);
  cc.wire_dims = wires;
  cc.slot_wire = 2;
  cc.inits = inits;
  cc.pre = pre_marking * routed_swap;
  cc.post = idle_correction * routed_swap * post_marking;
  cc.marking = mc;
  cc.correction = correction;
  cc.correction_on_idle_branch = true;
  cc.partition = mc.partition;
  cc.fixed_vector = fv.psi.normalized();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    cc.declared_outputs.push_back(
        tensor(cc.fixed_vector, mc.outcomes[mc.partition.block_of(i)]));
  }

  const ControlCheck check = verify_control(gs, cc);
  if (!check.ok) {
    throw SelfCheckFailed("synthesize_control_general: verification failed");
  }
  return cc;
}

namespace {

// Classifies an aligned qubit member against basis w; returns 0 (diagonal),
// 1 (anti-diagonal) or nullopt.
std::optional<std::size_t> qubit_type(const CMatrix& m, const CMatrix& w,
                                      double eps) {
  const CMatrix r = w.adjoint() * m * w;
  if (std::max(std::abs(r(0, 1)), std::abs(r(1, 0))) <= eps) {
    return 0;
  }
  if (std::max(std::abs(r(0, 0)), std::abs(r(1, 1))) <= eps) {
    return 1;
  }
  return std::nullopt;
}

}  // namespace

ControlCircuit synthesize_control_qubit(const GateSet& gs,
                                        const ControllabilityDecision& decision) {
  if (gs.dimension() != 2) {
    throw NotQubit("synthesize_control_qubit: gate set is not a qubit set");
  }
  if (!decision.controllable || !decision.partition ||
      !decision.representatives || !decision.fixed_vector) {
    throw NotControllable("synthesize_control_qubit: set is not controllable");
  }
  const num::Tolerance tol = gs.tolerance();
  const GateSet& aligned = *decision.representatives;

  // Single-ancilla form needs every member diagonal or anti-diagonal in the
  // classification basis of the original members.
  const bool structured = decision.markability.markable &&
                          decision.markability.basis_change.has_value() &&
                          !decision.markability.used_prefix_inverse;
  std::vector<std::size_t> types;
  bool fits = structured;
  if (structured) {
    const CMatrix& w = *decision.markability.basis_change;
    for (const Unitary& u : aligned.members()) {
      const std::optional<std::size_t> type = qubit_type(u.matrix, w, tol.eps);
      if (!type.has_value()) {
        fits = false;
        break;
      }
      types.push_back(*type);
    }
  }

  if (!fits) {
    // General construction with the marking circuit for the decided
    // partition.
    MarkabilityVerdict verdict = decision.markability;
    verdict.markable = true;
    verdict.partition = decision.partition;
    const MarkingCircuit mc = synthesize_marking_qubit(aligned, verdict);
    return synthesize_control_general(aligned, mc, *decision.fixed_vector);
  }

  const CMatrix& w = *decision.markability.basis_change;
  const CVector w0 = w.col_vector(0);
  const CVector w1 = w.col_vector(1);

  // Normalize representatives so diagonal members fix w0 exactly and
  // anti-diagonal members send w0 to w1 exactly.
  std::vector<Unitary> reps = aligned.members();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const CVector image = reps[i].matrix.apply(w0);
    const cdouble c = types[i] == 0 ? dot(w0, image) : dot(w1, image);
    if (std::abs(std::abs(c) - 1.0) > 1e-6) {
      throw StructureMismatch("synthesize_control_qubit: member action on the "
                              "classification basis is not unimodular");
    }
    reps[i].matrix = (std::conj(c) / std::abs(c)) * reps[i].matrix;
  }
  GateSet normalized(2, reps, tol);

  const std::vector<std::size_t> wires = {2, 2, 2};
  CMatrix cx(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = cdouble(1.0, 0.0);
  const CMatrix ww = kron(w, w);
  const CMatrix dressed_cx = ww * cx * ww.adjoint();

  const CMatrix idle_swap = controlled_branch(
      swap_wires(std::vector<std::size_t>(wires.begin() + 1, wires.end()), 0, 1),
      wires, 0, 0);
  const CMatrix active_cx = controlled_branch(dressed_cx, wires, 0, 1);

  ControlCircuit cc(normalized);
  cc.wire_dims = wires;
  cc.slot_wire = 1;
  cc.inits = {std::nullopt, std::nullopt, w0};
  cc.pre = active_cx * idle_swap;
  cc.post = idle_swap * active_cx;
  cc.correction = CMatrix::identity(4);
  cc.correction_on_idle_branch = false;
  cc.partition = *decision.partition;
  cc.fixed_vector = w0;
  cc.single_ancilla_form = true;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    cc.declared_outputs.push_back(types[i] == 0 ? w0 : w1);
  }

  // The marking content of the three-wire form is the dressed
  // controlled-NOT sandwich over the diagonal/anti-diagonal split.
  std::vector<std::vector<std::size_t>> type_blocks(1);
  bool has_anti = false;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i] == 1) has_anti = true;
  }
  if (has_anti) {
    type_blocks.emplace_back();
    for (std::size_t i = 0; i < types.size(); ++i) {
      type_blocks[types[i]].push_back(i);
    }
    if (type_blocks[0].empty()) {
      type_blocks.erase(type_blocks.begin());
    }
  } else {
    for (std::size_t i = 0; i < types.size(); ++i) {
      type_blocks[0].push_back(i);
    }
  }
  MarkingCircuit marking;
  marking.system_dim = 2;
  marking.ancilla_dims = {2};
  marking.pre = dressed_cx;
  marking.post = dressed_cx;
  marking.partition = Partition(normalized.size(), type_blocks);
  marking.outcomes = {basis_state(2, 0)};
  if (marking.partition.n_blocks() == 2) {
    marking.outcomes.push_back(basis_state(2, 1));
  }
  cc.marking = marking;

  const ControlCheck check = verify_control(normalized, cc);
  if (!check.ok) {
    throw SelfCheckFailed("synthesize_control_qubit: verification failed");
  }
  return cc;
}

ControlCheck verify_control(const GateSet& gs, const ControlCircuit& cc) {
  const std::size_t d = gs.dimension();
  if (cc.wire_dims.size() < 2 || cc.wire_dims[0] != 2 || cc.wire_dims[1] != d) {
    throw ShapeMismatch("verify_control: wire layout mismatch");
  }
  if (cc.slot_wire >= cc.wire_dims.size() ||
      cc.wire_dims[cc.slot_wire] != d) {
    throw ShapeMismatch("verify_control: slot wire dimension mismatch");
  }
  const std::size_t full = cc.total_dim();
  if (cc.pre.rows() != full || cc.pre.cols() != full ||
      cc.post.rows() != full || cc.post.cols() != full) {
    throw ShapeMismatch("verify_control: circuit dimension mismatch");
  }
  if (cc.declared_outputs.size() != gs.size()) {
    throw ShapeMismatch("verify_control: declared outputs mismatch");
  }

  const std::size_t side_dim = full / (2 * d);
  const CMatrix in = input_isometry(cc.wire_dims, cc.inits);
  if (in.cols() != 2 * d) {
    throw ShapeMismatch("verify_control: circuit does not expose control and "
                        "system as its only open wires");
  }

  const num::Tolerance tol = gs.tolerance();
  ControlCheck check;
  check.ok = true;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const CMatrix realized =
        cc.post *
        embed_operator(gs.member(i).matrix, cc.wire_dims, {cc.slot_wire}) *
        cc.pre * in;
    const CMatrix expected_action =
        direct_sum(CMatrix::identity(d), gs.member(i).matrix);
    // Contract against the expected block action to extract the side state.
    CVector side(side_dim);
    for (std::size_t k = 0; k < 2 * d; ++k) {
      for (std::size_t j = 0; j < 2 * d; ++j) {
        const cdouble e = std::conj(expected_action(k, j));
        if (e == cdouble(0.0, 0.0)) {
          continue;
        }
        for (std::size_t m = 0; m < side_dim; ++m) {
          side[m] += e * realized(k * side_dim + m, j);
        }
      }
    }
    side = side.scaled(cdouble(1.0 / (2.0 * d), 0.0));

    double residual_sq = 0.0;
    for (std::size_t k = 0; k < 2 * d; ++k) {
      for (std::size_t m = 0; m < side_dim; ++m) {
        for (std::size_t j = 0; j < 2 * d; ++j) {
          residual_sq += std::norm(realized(k * side_dim + m, j) -
                                   expected_action(k, j) * side[m]);
        }
      }
    }
    const double residual = std::sqrt(residual_sq);
    check.residuals.push_back(residual);
    check.max_residual = std::max(check.max_residual, residual);
    if (residual > tol.eps * 2.0 * d) {
      check.ok = false;
    }
    if (cc.declared_outputs[i].dim() != side_dim ||
        std::abs(dot(cc.declared_outputs[i], side)) <
            1.0 - std::max(10.0 * tol.eps * d, 1e-10)) {
      check.ok = false;
    }
    check.psi_states.push_back(std::move(side));
  }
  return check;
}

EstimateBeforeUse decide_estimate_before_use(const GateSet& gs) {
  const num::Tolerance tol = gs.tolerance();
  const double d = static_cast<double>(gs.dimension());
  EstimateBeforeUse out;
  const Verdict joint = jointly_discriminable(gs);
  out.possible = joint == Verdict::Yes;

  Partition partition = Partition::trivial(gs.size());
  if (gs.dimension() == 2) {
    const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
    if (verdict.markable && verdict.partition.has_value()) {
      partition = *verdict.partition;
    }
  } else if (joint == Verdict::Yes) {
    partition = Partition::singletons(gs.size());
  }

  out.blocks_proportional = true;
  for (std::size_t b = 0; b < partition.n_blocks(); ++b) {
    const std::vector<std::size_t>& block = partition.block(b);
    for (std::size_t x = 0; x < block.size(); ++x) {
      for (std::size_t y = x + 1; y < block.size(); ++y) {
        if (std::abs(hs_inner(gs.member(block[x]), gs.member(block[y]))) <
            (1.0 - tol.eps) * d) {
          out.blocks_proportional = false;
        }
      }
    }
  }
  return out;
}

}  // namespace condgate
