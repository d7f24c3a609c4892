#pragma once

#include <vector>

#include "condgate/matrix.hpp"

namespace condgate::num {

struct Eigenpair {
  cdouble value;
  CVector vector;
};

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column i pairs with values[i]
};

// Cyclic Jacobi sweeps; the input is assumed Hermitian (only the Hermitian
// part is consulted).
HermitianEigen eig_hermitian(const CMatrix& h);

// Complete orthonormal eigensystem of a unitary matrix, obtained by jointly
// diagonalizing its Hermitian and anti-Hermitian parts. Pairs are sorted by
// eigenvalue angle in [0, 2pi). Eigenvectors within a degenerate eigenvalue
// cluster are an arbitrary orthonormal choice.
std::vector<Eigenpair> eig_unitary(const CMatrix& u, Tolerance tol = {});

struct Svd {
  std::vector<double> singular_values;  // descending
  CMatrix left;                         // thin; column i pairs with sigma_i
  CMatrix right;                        // square; right-singular vectors
};

// One-sided Jacobi on columns. Small singular values come out with absolute
// accuracy near machine precision, which the rank thresholds rely on.
Svd svd_jacobi(const CMatrix& m);

// Number of singular values above eps * sigma_max.
std::size_t numeric_rank(const CMatrix& m, Tolerance tol = {});

// Orthonormal basis of { v : ||M v|| <= eps * ||M|| * ||v|| }; the whole
// space when M = 0.
std::vector<CVector> null_space(const CMatrix& m, Tolerance tol = {});

struct SpanDims {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t dim_intersection = 0;
};

// Ranks of the two operator spans (matrices flattened to vectors) and the
// dimension of their intersection, via rank(A) + rank(B) - rank([A B]).
SpanDims span_intersection_dim(const std::vector<CMatrix>& sa,
                               const std::vector<CMatrix>& sb,
                               Tolerance tol = {});

// Extends the given orthonormal columns to a full unitary by Gram-Schmidt
// over the standard basis. Deterministic.
CMatrix complete_unitary(const std::vector<CVector>& columns, std::size_t dim);

// Orthonormal basis of the intersection of two subspaces given by orthonormal
// bases.
std::vector<CVector> subspace_intersection(const std::vector<CVector>& a,
                                           const std::vector<CVector>& b,
                                           Tolerance tol = {});

}  // namespace condgate::num
