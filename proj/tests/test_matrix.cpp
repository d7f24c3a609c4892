#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgate/matrix.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace condgate::num;
using testsupport::distance;

TEST_CASE("kron identity and basis projector placement") {
  const CMatrix i2 = CMatrix::identity(2);
  CHECK(distance(kron(i2, i2), CMatrix::identity(4)) == 0.0);

  // sigma_x (x) |0><0| has its ones at (2,0) and (0,2).
  CMatrix p00(2, 2);
  p00(0, 0) = cdouble(1.0, 0.0);
  const CMatrix k = kron(testsupport::pauli_x(), p00);
  CHECK(k(2, 0) == cdouble(1.0, 0.0));
  CHECK(k(0, 2) == cdouble(1.0, 0.0));
  CHECK(std::abs(k.frobenius_norm() - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("kron of random pairs equals the entrywise oracle") {
  std::mt19937_64 rng(0x5eed0002);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix a = testsupport::haar_unitary(2, rng);
    const CMatrix b = testsupport::haar_unitary(3, rng);
    CHECK(distance(kron(a, b), testsupport::naive_kron(a, b)) < 1e-14);
  }
}

TEST_CASE("kron mixed product property") {
  std::mt19937_64 rng(0x5eed0003);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix a = testsupport::haar_unitary(2, rng);
    const CMatrix b = testsupport::haar_unitary(3, rng);
    const CMatrix c = testsupport::haar_unitary(2, rng);
    const CMatrix d = testsupport::haar_unitary(3, rng);
    CHECK(distance(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-8);
  }
}

TEST_CASE("direct_sum block placement") {
  const CMatrix i1 = CMatrix::identity(1);
  CHECK(distance(direct_sum(i1, i1), CMatrix::identity(2)) == 0.0);

  const CMatrix s = direct_sum(testsupport::pauli_x(), CMatrix::identity(2));
  CHECK(is_unitary(s));

  // Z (+) X equals |0><0| (x) Z + |1><1| (x) X.
  CMatrix p00(2, 2), p11(2, 2);
  p00(0, 0) = cdouble(1.0, 0.0);
  p11(1, 1) = cdouble(1.0, 0.0);
  const CMatrix expected = testsupport::naive_kron(p00, testsupport::pauli_z()) +
                           testsupport::naive_kron(p11, testsupport::pauli_x());
  CHECK(distance(direct_sum(testsupport::pauli_z(), testsupport::pauli_x()),
                 expected) == 0.0);
}

TEST_CASE("direct_sum is unitary exactly when both blocks are") {
  std::mt19937_64 rng(0x5eed0004);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix a = testsupport::haar_unitary(2, rng);
    const CMatrix b = testsupport::haar_unitary(3, rng);
    CHECK(is_unitary(direct_sum(a, b)));
    CMatrix damaged = a;
    damaged(0, 0) += cdouble(0.1, 0.0);
    CHECK_FALSE(is_unitary(direct_sum(damaged, b)));
  }
  CHECK_THROWS_AS(direct_sum(CMatrix(2, 3), CMatrix(2, 2)),
                  condgate::NonSquare);
}

TEST_CASE("equal_up_to_phase basic verdicts") {
  std::mt19937_64 rng(0x5eed0005);
  const CMatrix u = testsupport::haar_unitary(3, rng);
  const cdouble phase = std::polar(1.0, M_PI / 7.0);
  const PhaseComparison same = equal_up_to_phase(u, phase * u);
  CHECK(same.equal);
  REQUIRE(same.phase.has_value());
  CHECK(std::abs(*same.phase - phase) < 1e-12);
  // a * phase lands on b.
  CHECK(distance((*same.phase) * u, phase * u) < 1e-12);

  CHECK_FALSE(
      equal_up_to_phase(testsupport::pauli_x(), testsupport::pauli_y()).equal);

  // diag(1, i) against Z: |trace| = sqrt(2) < 2.
  CMatrix s(2, 2);
  s(0, 0) = cdouble(1.0, 0.0);
  s(1, 1) = cdouble(0.0, 1.0);
  CHECK_FALSE(equal_up_to_phase(testsupport::pauli_z(), s).equal);

  CHECK_THROWS_AS(equal_up_to_phase(CMatrix(2, 2), testsupport::pauli_z()),
                  condgate::ZeroMatrix);
}

TEST_CASE("equal_up_to_phase is an equivalence relation on exact inputs") {
  std::mt19937_64 rng(0x5eed0006);
  const Tolerance tight{1e-12};
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix a = testsupport::haar_unitary(2, rng);
    const CMatrix b = testsupport::random_phase(rng) * a;
    const CMatrix c = testsupport::random_phase(rng) * a;
    CHECK(equal_up_to_phase(a, a, tight).equal);                  // reflexive
    CHECK(equal_up_to_phase(a, b, tight).equal);
    CHECK(equal_up_to_phase(b, a, tight).equal);                  // symmetric
    CHECK(equal_up_to_phase(b, c, tight).equal);                  // transitive
    const CMatrix other = testsupport::haar_unitary(2, rng);
    if (!equal_up_to_phase(a, other, tight).equal) {
      CHECK_FALSE(equal_up_to_phase(b, other, tight).equal);
    }
  }
}

TEST_CASE("matrix-vector application and norms") {
  const CMatrix x = testsupport::pauli_x();
  const CVector e0 = basis_state(2, 0);
  const CVector mapped = x.apply(e0);
  CHECK(std::abs(mapped[1] - cdouble(1.0, 0.0)) == 0.0);
  CHECK(e0.norm() == 1.0);
  CHECK(std::abs(dot(e0, mapped)) == 0.0);
}
