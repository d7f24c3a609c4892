#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgate/markability.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace condgate;
using num::CMatrix;
using num::CVector;
using num::cdouble;
using testsupport::distance;

namespace {

CMatrix diag2(cdouble a, cdouble b) {
  CMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CMatrix antidiag2(cdouble upper, cdouble lower) {
  CMatrix m(2, 2);
  m(0, 1) = upper;
  m(1, 0) = lower;
  return m;
}

GateSet pauli_set() {
  return testsupport::gate_set_from({CMatrix::identity(2),
                                     testsupport::pauli_z(),
                                     testsupport::pauli_x(),
                                     testsupport::pauli_y()});
}

// Independent simulation of D (U (x) I) C on (system (x) ancilla) with the
// ancilla prepared in |0>, using plain loops only.
CMatrix simulate_marking(const CMatrix& c, const CMatrix& d, const CMatrix& u,
                         std::size_t anc_dim) {
  using testsupport::naive_kron;
  using testsupport::naive_matmul;
  const CMatrix u_lift = naive_kron(u, CMatrix::identity(anc_dim));
  const CMatrix middle = naive_matmul(d, naive_matmul(u_lift, c));
  CMatrix ready(2 * anc_dim, 2);
  ready(0, 0) = cdouble(1.0, 0.0);
  ready(anc_dim, 1) = cdouble(1.0, 0.0);
  return naive_matmul(middle, ready);
}

}  // namespace

TEST_CASE("check_bipartition_markable_qubit fixed cases") {
  const GateSet paulis = pauli_set();

  // {I, Z} | {X, Y}: trivially intersecting two-dimensional spans.
  CHECK(check_bipartition_markable_qubit(paulis, Partition(4, {{0, 1}, {2, 3}})));

  // {I} | {X, Y, Z}: the second span is three-dimensional.
  CHECK_FALSE(
      check_bipartition_markable_qubit(paulis, Partition(4, {{0}, {1, 2, 3}})));

  // All singleton-versus-rest splits fail the same way.
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != k) rest.push_back(j);
    }
    CHECK_FALSE(check_bipartition_markable_qubit(
        paulis, Partition(4, {{k}, rest})));
  }

  const GateSet ix = testsupport::gate_set_from(
      {CMatrix::identity(2), testsupport::pauli_x()});
  CHECK(check_bipartition_markable_qubit(ix, Partition(2, {{0}, {1}})));

  const GateSet qutrit = testsupport::gate_set_from(
      {CMatrix::identity(3), std::polar(1.0, 0.3) * CMatrix::identity(3)});
  CHECK_THROWS_AS(
      check_bipartition_markable_qubit(qutrit, Partition(2, {{0}, {1}})),
      NotQubit);
}

TEST_CASE("minimal_partition_qubit on the Pauli set refines to singletons") {
  const MarkabilityVerdict verdict = minimal_partition_qubit(pauli_set());
  REQUIRE(verdict.markable);
  REQUIRE(verdict.partition.has_value());
  CHECK(*verdict.partition == Partition::singletons(4));
}

TEST_CASE("minimal_partition_qubit rejects the Pauli set plus Hadamard") {
  const GateSet gs = testsupport::gate_set_from(
      {CMatrix::identity(2), testsupport::pauli_z(), testsupport::pauli_x(),
       testsupport::pauli_y(), testsupport::hadamard()});
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  CHECK_FALSE(verdict.markable);
}

TEST_CASE("minimal_partition_qubit leaves co-diagonal sets on one block") {
  const GateSet gs = testsupport::gate_set_from(
      {CMatrix::identity(2), diag2(cdouble(1.0, 0.0), std::polar(1.0, M_PI / 5.0))});
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  REQUIRE(verdict.markable);
  REQUIRE(verdict.partition.has_value());
  CHECK(verdict.partition->is_trivial());
}

TEST_CASE("minimal_partition_qubit on all-scalar sets") {
  const GateSet gs = testsupport::gate_set_from(
      {CMatrix::identity(2), std::polar(1.0, 0.4) * CMatrix::identity(2)});
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  CHECK(verdict.markable);
  REQUIRE(verdict.partition.has_value());
  CHECK(verdict.partition->is_trivial());
  CHECK_FALSE(verdict.used_prefix_inverse);
}

TEST_CASE("minimal_partition_qubit classification via prefix inversion") {
  // Anti-diagonal members listed first: the first member's own eigenbasis
  // classifies nothing, but the prefix-inverted set does.
  const CMatrix a2 = antidiag2(std::polar(1.0, 0.3), std::polar(1.0, 1.1));
  const CMatrix d = diag2(cdouble(1.0, 0.0), std::polar(1.0, 0.7));
  const GateSet gs =
      testsupport::gate_set_from({testsupport::pauli_x(), a2, d});
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  REQUIRE(verdict.markable);
  CHECK(verdict.used_prefix_inverse);
  REQUIRE(verdict.partition.has_value());
  CHECK(*verdict.partition == Partition(3, {{0, 1}, {2}}));

  const MarkingCircuit mc = synthesize_marking_qubit(gs, verdict);
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-9);
}

TEST_CASE("synthesize_marking_qubit on {Z, X} against brute force") {
  const GateSet gs = testsupport::gate_set_from(
      {testsupport::pauli_z(), testsupport::pauli_x()});
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  REQUIRE(verdict.markable);
  const MarkingCircuit mc = synthesize_marking_qubit(gs, verdict);
  REQUIRE(mc.ancilla_dims == std::vector<std::size_t>{2});

  // Independent simulation: the controlled-NOT sandwich in the classification
  // basis, applied to each member, must produce U (x) |n>.
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const CMatrix realized =
        simulate_marking(mc.pre, mc.post, gs.member(i).matrix, 2);
    const std::size_t block = mc.partition.block_of(i);
    const CMatrix expected = testsupport::naive_kron(
        gs.member(i).matrix, CMatrix::column(mc.outcomes[block]));
    CHECK(distance(realized, expected) <= 1e-12);
  }

  // Z is the diagonal member: outcome |0>; X anti-diagonal: outcome |1>.
  CHECK(mc.partition.block_of(0) == 0);
  CHECK(mc.partition.block_of(1) == 1);
  CHECK(std::abs(mc.outcomes[0][0]) == doctest::Approx(1.0));
  CHECK(std::abs(mc.outcomes[1][1]) == doctest::Approx(1.0));
}

TEST_CASE("synthesize_marking_qubit trivial partition") {
  const GateSet gs = testsupport::gate_set_from({CMatrix::identity(2)});
  MarkabilityVerdict verdict;
  verdict.markable = true;
  verdict.partition = Partition::trivial(1);
  const MarkingCircuit mc = synthesize_marking_qubit(gs, verdict);
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual == 0.0);
}

TEST_CASE("synthesize_marking_qubit on a two-block four-member split") {
  // Hand-provided bipartition for {I, Z} u {X, Y} in the computational basis.
  const GateSet gs = pauli_set();
  MarkabilityVerdict verdict;
  verdict.markable = true;
  verdict.partition = Partition(4, {{0, 1}, {2, 3}});
  verdict.basis_change = CMatrix::identity(2);
  const MarkingCircuit mc = synthesize_marking_qubit(gs, verdict);
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-9);
}

TEST_CASE("synthesize_marking_qubit refuses unmarkable input") {
  const GateSet gs = testsupport::gate_set_from(
      {CMatrix::identity(2), testsupport::hadamard(), testsupport::pauli_x()});
  MarkabilityVerdict verdict;
  verdict.markable = false;
  CHECK_THROWS_AS(synthesize_marking_qubit(gs, verdict), NotMarkable);
}

TEST_CASE("synthesize_marking_joint on the Pauli set") {
  const GateSet gs = pauli_set();
  const MarkingCircuit mc = synthesize_marking_joint(gs);
  CHECK(mc.ancilla_dims == std::vector<std::size_t>{2, 2});
  CHECK(mc.partition == Partition::singletons(4));
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-9);

  // Outcome labels are orthonormal.
  for (std::size_t a = 0; a < mc.outcomes.size(); ++a) {
    for (std::size_t b = 0; b < mc.outcomes.size(); ++b) {
      const double overlap = std::abs(dot(mc.outcomes[a], mc.outcomes[b]));
      CHECK(overlap == doctest::Approx(a == b ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("synthesize_marking_joint on a singleton") {
  const GateSet gs = testsupport::gate_set_from({CMatrix::identity(2)});
  const MarkingCircuit mc = synthesize_marking_joint(gs);
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-9);
}

TEST_CASE("synthesize_marking_joint on a qutrit phase triple") {
  const cdouble w = std::polar(1.0, 2.0 * M_PI / 3.0);
  CMatrix omega(3, 3);
  omega(0, 0) = cdouble(1.0, 0.0);
  omega(1, 1) = w;
  omega(2, 2) = w * w;
  const GateSet gs = testsupport::gate_set_from(
      {CMatrix::identity(3), omega, omega * omega});
  const MarkingCircuit mc = synthesize_marking_joint(gs);
  CHECK(mc.partition == Partition::singletons(3));
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-9);
}

TEST_CASE("synthesize_marking_joint rejects overlapping members") {
  const GateSet gs = testsupport::gate_set_from(
      {testsupport::pauli_z(), testsupport::hadamard()});
  CHECK_THROWS_AS(synthesize_marking_joint(gs), NotJointlyDiscriminable);
}

TEST_CASE("verify_marking rejects a circuit with no information flow") {
  const GateSet gs = testsupport::gate_set_from(
      {testsupport::pauli_z(), testsupport::pauli_x()});
  MarkingCircuit mc;
  mc.system_dim = 2;
  mc.ancilla_dims = {2};
  mc.pre = CMatrix::identity(4);
  mc.post = CMatrix::identity(4);
  mc.partition = Partition(2, {{0}, {1}});
  mc.outcomes = {num::basis_state(2, 0), num::basis_state(2, 1)};
  const MarkingCheck check = verify_marking(gs, mc);
  CHECK_FALSE(check.ok);
  CHECK(check.max_residual >= 1.0);
}

TEST_CASE("verified circuits have perfectly discriminable cross blocks") {
  std::mt19937_64 rng(0x5eed0041);
  for (int rep = 0; rep < 15; ++rep) {
    const CMatrix w = testsupport::haar_unitary(2, rng);
    std::vector<CMatrix> members;
    members.push_back(w * testsupport::random_diagonal_unitary(rng) * w.adjoint());
    members.push_back(w * testsupport::random_diagonal_unitary(rng) * w.adjoint());
    members.push_back(w * testsupport::random_antidiagonal_unitary(rng) *
                      w.adjoint());
    const GateSet gs = testsupport::gate_set_from(members);
    const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
    REQUIRE(verdict.markable);
    const MarkingCircuit mc = synthesize_marking_qubit(gs, verdict);
    REQUIRE(verify_marking(gs, mc).ok);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        if (mc.partition.block_of(i) != mc.partition.block_of(j)) {
          CHECK(pairwise_perfectly_discriminable(gs.member(i), gs.member(j),
                                                 gs.tolerance()));
        }
      }
    }
  }
}

TEST_CASE("markability verdicts are phase invariant") {
  std::mt19937_64 rng(0x5eed0042);
  const GateSet base = pauli_set();
  const MarkabilityVerdict reference = minimal_partition_qubit(base);
  for (std::size_t k = 0; k < base.size(); ++k) {
    const GateSet shifted = base.with_member_matrix(
        k, testsupport::random_phase(rng) * base.member(k).matrix);
    const MarkabilityVerdict verdict = minimal_partition_qubit(shifted);
    CHECK(verdict.markable == reference.markable);
    CHECK(*verdict.partition == *reference.partition);
  }
}
