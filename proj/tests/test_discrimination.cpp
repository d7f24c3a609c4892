#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgate/decomp.hpp"
#include "condgate/discrimination.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace condgate;
using num::CMatrix;
using num::cdouble;

namespace {

Unitary named(const char* name, CMatrix m) { return {name, std::move(m)}; }

CMatrix diag2(cdouble a, cdouble b) {
  CMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CMatrix diag3(cdouble a, cdouble b, cdouble c) {
  CMatrix m(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("hs_inner fixed values") {
  const Unitary x = named("X", testsupport::pauli_x());
  const Unitary y = named("Y", testsupport::pauli_y());
  CHECK(std::abs(hs_inner(x, x) - cdouble(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(hs_inner(x, y)) < 1e-15);

  const Unitary w1 = named("W1", testsupport::w1());
  const Unitary w2 = named("W2", testsupport::w2());
  CHECK(std::abs(hs_inner(w1, w2) - cdouble(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS(hs_inner(x, named("I3", CMatrix::identity(3))),
                  DimensionMismatch);
}

TEST_CASE("pairwise discriminability fixed cases") {
  const Unitary i2 = named("I", CMatrix::identity(2));
  const Unitary z = named("Z", testsupport::pauli_z());
  CHECK(pairwise_perfectly_discriminable(i2, z));

  const Unitary w1 = named("W1", testsupport::w1());
  const Unitary w2 = named("W2", testsupport::w2());
  CHECK_FALSE(pairwise_perfectly_discriminable(w1, w2));

  // d = 3: cube roots of unity surround the origin.
  const cdouble w = std::polar(1.0, 2.0 * M_PI / 3.0);
  const Unitary i3 = named("I", CMatrix::identity(3));
  const Unitary omega = named("O", diag3(cdouble(1.0, 0.0), w, w * w));
  CHECK(pairwise_perfectly_discriminable(i3, omega));

  // d = 3: eigenvalues clustered on one side leave the origin outside.
  const Unitary lop = named("L", diag3(cdouble(1.0, 0.0), cdouble(1.0, 0.0),
                                       std::polar(1.0, 0.7)));
  CHECK_FALSE(pairwise_perfectly_discriminable(i3, lop));
}

TEST_CASE("pairwise discriminability is symmetric and phase invariant") {
  std::mt19937_64 rng(0x5eed0031);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t d = rep % 2 == 0 ? 2 : 3;
    const Unitary u = named("u", testsupport::haar_unitary(d, rng));
    const Unitary v = named("v", testsupport::haar_unitary(d, rng));
    const bool base = pairwise_perfectly_discriminable(u, v);
    CHECK(pairwise_perfectly_discriminable(v, u) == base);
    const Unitary up = named("up", testsupport::random_phase(rng) * u.matrix);
    CHECK(pairwise_perfectly_discriminable(up, v) == base);
  }
}

TEST_CASE("qubit hull criterion agrees with the traceless criterion") {
  std::mt19937_64 rng(0x5eed0032);
  const num::Tolerance tol;
  for (int rep = 0; rep < 60; ++rep) {
    const CMatrix u = testsupport::haar_unitary(2, rng);
    const CMatrix v = testsupport::haar_unitary(2, rng);
    const bool traceless = std::abs((u.adjoint() * v).trace()) <= 2.0 * tol.eps;
    std::vector<cdouble> eigenvalues;
    for (const auto& p : num::eig_unitary(u.adjoint() * v, tol)) {
      eigenvalues.push_back(p.value);
    }
    const bool hull = origin_hull_distance(eigenvalues) <= tol.eps;
    CHECK(traceless == hull);
  }
  // And on an exactly traceless pair both fire.
  std::vector<cdouble> pm = {cdouble(0.0, 1.0), cdouble(0.0, -1.0)};
  CHECK(origin_hull_distance(pm) == 0.0);
}

TEST_CASE("origin_hull_distance geometry") {
  CHECK(origin_hull_distance({cdouble(1.0, 0.0)}) == doctest::Approx(1.0));
  CHECK(origin_hull_distance({cdouble(1.0, 1.0), cdouble(-1.0, 1.0)}) ==
        doctest::Approx(1.0));
  CHECK(origin_hull_distance({cdouble(1.0, 0.0), cdouble(-1.0, 0.1),
                              cdouble(-1.0, -0.1)}) == doctest::Approx(0.0));
  CHECK(origin_hull_distance({cdouble(0.0, 1.0), cdouble(0.0, -1.0)}) ==
        doctest::Approx(0.0));
}

TEST_CASE("jointly_discriminable verdicts") {
  const num::Tolerance tol;
  SUBCASE("all Paulis") {
    const GateSet gs = testsupport::gate_set_from(
        {CMatrix::identity(2), testsupport::pauli_x(), testsupport::pauli_y(),
         testsupport::pauli_z()});
    CHECK(jointly_discriminable(gs) == Verdict::Yes);
  }
  SUBCASE("the three (sigma+sigma)/sqrt(2) gates") {
    const GateSet gs = testsupport::gate_set_from(
        {testsupport::w1(), testsupport::w2(), testsupport::w3()});
    CHECK(jointly_discriminable(gs) == Verdict::No);
  }
  SUBCASE("singleton") {
    const GateSet gs = testsupport::gate_set_from({testsupport::w1()});
    CHECK(jointly_discriminable(gs) == Verdict::Yes);
  }
  SUBCASE("d=3 orthogonal triple") {
    const cdouble w = std::polar(1.0, 2.0 * M_PI / 3.0);
    const CMatrix omega = diag3(cdouble(1.0, 0.0), w, w * w);
    const GateSet gs = testsupport::gate_set_from(
        {CMatrix::identity(3), omega, omega * omega});
    CHECK(jointly_discriminable(gs) == Verdict::Yes);
  }
  SUBCASE("d=3 pairwise-only pair stays unknown") {
    // Eigenvalues {i, -1, -i}: hull touches the origin, trace is -1.
    const CMatrix v = diag3(cdouble(0.0, 1.0), cdouble(-1.0, 0.0),
                            cdouble(0.0, -1.0));
    const GateSet gs = testsupport::gate_set_from({CMatrix::identity(3), v});
    CHECK(jointly_discriminable(gs) == Verdict::Unknown);
  }
  SUBCASE("proportional members are never jointly discriminable") {
    const GateSet gs = testsupport::gate_set_from(
        {CMatrix::identity(2),
         std::polar(1.0, 0.3) * CMatrix::identity(2)});
    CHECK(jointly_discriminable(gs) == Verdict::No);
  }
}

TEST_CASE("jointly yes implies every pair discriminable") {
  std::mt19937_64 rng(0x5eed0033);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix w = testsupport::haar_unitary(2, rng);
    std::vector<CMatrix> members;
    for (const CMatrix& p :
         {CMatrix::identity(2), testsupport::pauli_x(), testsupport::pauli_z()}) {
      members.push_back(w * p * w.adjoint());
    }
    const GateSet gs = testsupport::gate_set_from(members);
    REQUIRE(jointly_discriminable(gs) == Verdict::Yes);
    const DiscriminationReport report = discrimination_report(gs);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      CHECK_FALSE(report.pairwise[i][i]);
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        CHECK(report.pairwise[i][j]);
        CHECK(report.pairwise[j][i] == report.pairwise[i][j]);
      }
    }
  }
}
