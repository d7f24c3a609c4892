#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "condgate/errors.hpp"

namespace condgate::num {

using cdouble = std::complex<double>;

// Absolute numeric tolerance used by rank decisions, residual checks and
// verdicts throughout the library.
struct Tolerance {
  double eps = 1e-9;
};

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : entries_(dim, cdouble(0.0, 0.0)) {}
  explicit CVector(std::vector<cdouble> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const { return entries_.size(); }
  cdouble& operator[](std::size_t i) { return entries_[i]; }
  const cdouble& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<cdouble>& entries() const { return entries_; }
  cdouble* data() { return entries_.data(); }
  const cdouble* data() const { return entries_.data(); }

  double norm() const;
  CVector normalized() const;
  CVector scaled(cdouble factor) const;

 private:
  std::vector<cdouble> entries_;
};

// sum_i conj(x[i]) * y[i]
cdouble dot(const CVector& x, const CVector& y);
CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector tensor(const CVector& a, const CVector& b);
CVector basis_state(std::size_t dim, std::size_t index);

// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix zero(std::size_t rows, std::size_t cols);
  static CMatrix column(const CVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  cdouble* data() { return entries_.data(); }
  const cdouble* data() const { return entries_.data(); }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cdouble trace() const;
  double frobenius_norm() const;

  CVector col_vector(std::size_t j) const;
  void set_col(std::size_t j, const CVector& v);
  // Row-major flattening, used when treating operators as vectors.
  CVector vec() const;

  CVector apply(const CVector& v) const;

  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cdouble> entries_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cdouble scalar, const CMatrix& m);

// Kronecker product; entry (i*rb + k, j*cb + l) = a(i, j) * b(k, l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Block-diagonal direct sum diag(a, b); both operands must be square.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// ||m^H m - I||_F, the unitarity defect.
double unitarity_residual(const CMatrix& m);
bool is_unitary(const CMatrix& m, Tolerance tol = {});

struct PhaseComparison {
  bool equal = false;
  std::optional<cdouble> phase;  // unit modulus; a * phase ~ b when equal
};

// Equality of two nonzero matrices up to a global phase, decided by
// |tr(a^H b)| against (1 - eps) * ||a||_F * ||b||_F.
PhaseComparison equal_up_to_phase(const CMatrix& a, const CMatrix& b,
                                  Tolerance tol = {});

}  // namespace condgate::num
