#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgate/decomp.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace condgate::num;
using testsupport::distance;

namespace {

double eig_reconstruction_error(const CMatrix& u,
                                const std::vector<Eigenpair>& pairs) {
  CMatrix sum(u.rows(), u.rows());
  for (const Eigenpair& p : pairs) {
    const CMatrix col = CMatrix::column(p.vector);
    sum = sum + p.value * (col * col.adjoint());
  }
  return distance(sum, u);
}

double max_orthonormality_defect(const std::vector<Eigenpair>& pairs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const cdouble overlap = dot(pairs[i].vector, pairs[j].vector);
      worst = std::max(worst, std::abs(overlap - (i == j ? cdouble(1.0, 0.0)
                                                         : cdouble(0.0, 0.0))));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("eig_unitary on fixed gates") {
  SUBCASE("sigma_z") {
    const auto pairs = eig_unitary(testsupport::pauli_z());
    REQUIRE(pairs.size() == 2);
    // Angle order: +1 before -1.
    CHECK(std::abs(pairs[0].value - cdouble(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(pairs[1].value - cdouble(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(pairs[0].vector[0]) == doctest::Approx(1.0));
    CHECK(std::abs(pairs[1].vector[1]) == doctest::Approx(1.0));
  }

  SUBCASE("identity is fully degenerate") {
    const auto pairs = eig_unitary(CMatrix::identity(3));
    REQUIRE(pairs.size() == 3);
    for (const Eigenpair& p : pairs) {
      CHECK(std::abs(p.value - cdouble(1.0, 0.0)) < 1e-12);
    }
    CHECK(max_orthonormality_defect(pairs) < 1e-12);
  }

  SUBCASE("(X+Y)/sqrt(2) residuals") {
    const CMatrix u = testsupport::w1();
    const auto pairs = eig_unitary(u);
    REQUIRE(pairs.size() == 2);
    for (const Eigenpair& p : pairs) {
      const CVector lhs = u.apply(p.vector);
      const CVector rhs = p.vector.scaled(p.value);
      CHECK((lhs - rhs).norm() <= 1e-9);
      CHECK(std::abs(std::abs(p.value) - 1.0) <= 1e-9);
    }
  }

  SUBCASE("rejects non-unitary input") {
    CMatrix bad = CMatrix::identity(2);
    bad(0, 0) = cdouble(0.5, 0.0);
    CHECK_THROWS_AS(eig_unitary(bad), condgate::NotUnitary);
  }
}

TEST_CASE("eig_unitary reconstructs random unitaries with orthonormal bases") {
  std::mt19937_64 rng(0x5eed0011);
  for (std::size_t d : {2, 3, 4, 6}) {
    for (int rep = 0; rep < 8; ++rep) {
      const CMatrix u = testsupport::haar_unitary(d, rng);
      const auto pairs = eig_unitary(u);
      REQUIRE(pairs.size() == d);
      CHECK(eig_reconstruction_error(u, pairs) <= 1e-8);
      CHECK(max_orthonormality_defect(pairs) <= 1e-8);
    }
  }
}

TEST_CASE("eig_unitary splits conjugate pairs sharing a real part") {
  // diag(e^{i t}, e^{-i t}) conjugated: both eigenvalues have the same real
  // part, so the split must come from the anti-Hermitian half.
  std::mt19937_64 rng(0x5eed0012);
  const CMatrix w = testsupport::haar_unitary(2, rng);
  CMatrix d(2, 2);
  d(0, 0) = std::polar(1.0, 0.9);
  d(1, 1) = std::polar(1.0, -0.9);
  const CMatrix u = w * d * w.adjoint();
  const auto pairs = eig_unitary(u);
  REQUIRE(pairs.size() == 2);
  CHECK(std::abs(pairs[0].value - d(0, 0)) < 1e-10);
  CHECK(std::abs(pairs[1].value - d(1, 1)) < 1e-10);
  CHECK(eig_reconstruction_error(u, pairs) < 1e-10);
}

TEST_CASE("degenerate eigenspaces admit any orthonormal choice") {
  std::mt19937_64 rng(0x5eed0013);
  const CMatrix w = testsupport::haar_unitary(3, rng);
  CMatrix d(3, 3);
  d(0, 0) = d(1, 1) = cdouble(1.0, 0.0);
  d(2, 2) = std::polar(1.0, 1.1);
  const CMatrix u = w * d * w.adjoint();
  const auto pairs = eig_unitary(u);
  CHECK(eig_reconstruction_error(u, pairs) < 1e-9);
  CHECK(max_orthonormality_defect(pairs) < 1e-9);
}

TEST_CASE("null_space fixed cases") {
  SUBCASE("sigma_z minus identity") {
    const CMatrix m = testsupport::pauli_z() - CMatrix::identity(2);
    const auto basis = null_space(m);
    REQUIRE(basis.size() == 1);
    CHECK(std::abs(std::abs(basis[0][0]) - 1.0) < 1e-12);
    CHECK(std::abs(basis[0][1]) < 1e-12);
  }

  SUBCASE("zero matrix keeps the whole space") {
    const auto basis = null_space(CMatrix(3, 3));
    CHECK(basis.size() == 3);
  }

  SUBCASE("ZX has no unit eigenvalue") {
    const CMatrix m = testsupport::pauli_z() * testsupport::pauli_x() -
                      CMatrix::identity(2);
    CHECK(null_space(m).empty());
  }
}

TEST_CASE("null_space vectors annihilate the matrix") {
  std::mt19937_64 rng(0x5eed0014);
  for (int rep = 0; rep < 10; ++rep) {
    // Rank-deficient by construction: two of four columns repeat.
    const CMatrix u = testsupport::haar_unitary(4, rng);
    CMatrix m(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      m.set_col(j, u.col_vector(j % 2));
    }
    const auto basis = null_space(m);
    REQUIRE(basis.size() == 2);
    for (const CVector& v : basis) {
      CHECK(m.apply(v).norm() < 1e-12);
    }
  }
}

TEST_CASE("span_intersection_dim fixed cases") {
  const CMatrix i2 = CMatrix::identity(2);
  const CMatrix x = testsupport::pauli_x();
  const CMatrix y = testsupport::pauli_y();
  const CMatrix z = testsupport::pauli_z();

  const SpanDims a = span_intersection_dim({i2, z}, {x, y});
  CHECK(a.dim_a == 2);
  CHECK(a.dim_b == 2);
  CHECK(a.dim_intersection == 0);

  const SpanDims b = span_intersection_dim({i2}, {i2});
  CHECK(b.dim_a == 1);
  CHECK(b.dim_b == 1);
  CHECK(b.dim_intersection == 1);

  const SpanDims c = span_intersection_dim({i2, z}, {z, x});
  CHECK(c.dim_a == 2);
  CHECK(c.dim_b == 2);
  CHECK(c.dim_intersection == 1);

  // Intersection is symmetric in the arguments.
  const SpanDims cr = span_intersection_dim({z, x}, {i2, z});
  CHECK(cr.dim_intersection == c.dim_intersection);

  CHECK_THROWS_AS(span_intersection_dim({i2}, {CMatrix::identity(3)}),
                  condgate::ShapeMismatch);
}

TEST_CASE("svd rank thresholding is scale invariant") {
  std::mt19937_64 rng(0x5eed0015);
  const CMatrix u = testsupport::haar_unitary(3, rng);
  CHECK(numeric_rank(u) == 3);
  CHECK(numeric_rank(cdouble(1e-7, 0.0) * u) == 3);
  CMatrix singular(3, 3);
  singular.set_col(0, u.col_vector(0));
  singular.set_col(1, u.col_vector(0).scaled(cdouble(2.0, 1.0)));
  singular.set_col(2, u.col_vector(1));
  CHECK(numeric_rank(singular) == 2);
}

TEST_CASE("complete_unitary extends orthonormal columns") {
  std::mt19937_64 rng(0x5eed0016);
  const CMatrix u = testsupport::haar_unitary(4, rng);
  const CMatrix completed =
      complete_unitary({u.col_vector(0), u.col_vector(1)}, 4);
  CHECK(is_unitary(completed));
  CHECK((completed.col_vector(0) - u.col_vector(0)).norm() < 1e-12);
  CHECK((completed.col_vector(1) - u.col_vector(1)).norm() < 1e-12);
}
