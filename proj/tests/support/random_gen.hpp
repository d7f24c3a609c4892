#pragma once

#include <random>

#include "condgate/gateset.hpp"
#include "condgate/matrix.hpp"

namespace testsupport {

using condgate::num::CMatrix;
using condgate::num::CVector;
using condgate::num::cdouble;

inline cdouble random_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline cdouble random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const double t = u(rng);
  return {std::cos(t), std::sin(t)};
}

// Haar-distributed unitary: QR of a Ginibre matrix by modified Gram-Schmidt,
// with the R diagonal's phases folded back in.
inline CMatrix haar_unitary(std::size_t d, std::mt19937_64& rng) {
  CMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      g(i, j) = random_gaussian(rng);
    }
  }
  CMatrix q(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    CVector col = g.col_vector(j);
    for (std::size_t k = 0; k < j; ++k) {
      const CVector prev = q.col_vector(k);
      const cdouble overlap = dot(prev, col);
      col = col - prev.scaled(overlap);
    }
    cdouble pivot = col[0];
    const double mod = std::abs(pivot);
    const cdouble phase = mod > 1e-12 ? pivot / mod : cdouble(1.0, 0.0);
    q.set_col(j, col.normalized().scaled(std::conj(phase) *
                                         random_phase(rng)));
  }
  return q;
}

inline CMatrix random_diagonal_unitary(std::mt19937_64& rng) {
  CMatrix m(2, 2);
  m(0, 0) = random_phase(rng);
  m(1, 1) = random_phase(rng);
  return m;
}

inline CMatrix random_antidiagonal_unitary(std::mt19937_64& rng) {
  CMatrix m(2, 2);
  m(0, 1) = random_phase(rng);
  m(1, 0) = random_phase(rng);
  return m;
}

inline condgate::GateSet gate_set_from(std::vector<CMatrix> matrices,
                                       condgate::num::Tolerance tol = {}) {
  std::vector<condgate::Unitary> members;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    members.push_back({"g" + std::to_string(i), std::move(matrices[i])});
  }
  const std::size_t dim = members.front().matrix.rows();
  return condgate::GateSet(dim, std::move(members), tol);
}

}  // namespace testsupport
