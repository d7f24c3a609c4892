#include "condgate/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "condgate/kernels.hpp"

namespace condgate::num {

namespace {

struct Rotation2 {
  // Unitary [[c, s], [-conj(phase)*s, conj(phase)*c]] with real c, s that
  // diagonalizes the Hermitian 2x2 [[app, apq], [conj(apq), aqq]].
  double c = 1.0;
  double s = 0.0;
  cdouble phase = cdouble(1.0, 0.0);  // apq / |apq|
};

Rotation2 make_rotation(double app, double aqq, cdouble apq) {
  Rotation2 rot;
  const double r = std::abs(apq);
  if (r == 0.0) {
    return rot;
  }
  rot.phase = apq / r;
  const double tau = (aqq - app) / (2.0 * r);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  return rot;
}

// Applies the 2x2 rotation to columns p, q of m (right multiplication).
void rotate_columns(CMatrix& m, std::size_t p, std::size_t q, const Rotation2& rot) {
  const cdouble pc = std::conj(rot.phase);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const cdouble mp = m(i, p);
    const cdouble mq = m(i, q);
    m(i, p) = rot.c * mp - pc * rot.s * mq;
    m(i, q) = rot.s * mp + pc * rot.c * mq;
  }
}

double offdiag_norm(const CMatrix& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (i != j) {
        acc += std::norm(h(i, j));
      }
    }
  }
  return std::sqrt(acc);
}

}  // namespace

HermitianEigen eig_hermitian(const CMatrix& h) {
  if (!h.is_square()) {
    throw NonSquare("eig_hermitian: matrix must be square");
  }
  const std::size_t n = h.rows();
  // Work on the Hermitian part only; drifts from symmetry stay out of the
  // iteration.
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    }
  }
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double target = 1e-15 * scale;
  for (int sweep = 0; sweep < 60 && offdiag_norm(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cdouble apq = a(p, q);
        if (std::abs(apq) <= 1e-18 * scale) {
          continue;
        }
        const Rotation2 rot =
            make_rotation(a(p, p).real(), a(q, q).real(), apq);
        // a <- J^H a J restricted to rows/cols p, q.
        const cdouble pc = std::conj(rot.phase);
        for (std::size_t i = 0; i < n; ++i) {
          const cdouble aip = a(i, p);
          const cdouble aiq = a(i, q);
          a(i, p) = rot.c * aip - pc * rot.s * aiq;
          a(i, q) = rot.s * aip + pc * rot.c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cdouble apj = a(p, j);
          const cdouble aqj = a(q, j);
          a(p, j) = rot.c * apj - rot.phase * rot.s * aqj;
          a(q, j) = rot.s * apj + rot.phase * rot.c * aqj;
        }
        rotate_columns(v, p, q, rot);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a(i, i).real();
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    out.vectors.set_col(k, v.col_vector(order[k]));
  }
  return out;
}

std::vector<Eigenpair> eig_unitary(const CMatrix& u, Tolerance tol) {
  if (!u.is_square()) {
    throw NonSquare("eig_unitary: matrix must be square");
  }
  const std::size_t n = u.rows();
  if (unitarity_residual(u) > tol.eps * static_cast<double>(n)) {
    throw NotUnitary("eig_unitary: input is not unitary within tolerance");
  }

  const CMatrix uh = u.adjoint();
  CMatrix re(n, n);
  CMatrix im(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      re(i, j) = 0.5 * (u(i, j) + uh(i, j));
      im(i, j) = cdouble(0.0, -0.5) * (u(i, j) - uh(i, j));
    }
  }

  const HermitianEigen base = eig_hermitian(re);

  // Cluster the cosine spectrum, then split each cluster by the sine part.
  const double gap = std::max(tol.eps, 1e-8);
  std::vector<Eigenpair> pairs;
  pairs.reserve(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && base.values[stop] - base.values[stop - 1] <= gap) {
      ++stop;
    }
    const std::size_t k = stop - start;
    CMatrix q(n, k);
    for (std::size_t j = 0; j < k; ++j) {
      q.set_col(j, base.vectors.col_vector(start + j));
    }
    CMatrix vectors;
    if (k == 1) {
      vectors = q;
    } else {
      const CMatrix restricted = q.adjoint() * im * q;
      const HermitianEigen split = eig_hermitian(restricted);
      vectors = q * split.vectors;
    }
    for (std::size_t j = 0; j < k; ++j) {
      CVector v = vectors.col_vector(j).normalized();
      cdouble lambda = dot(v, u.apply(v));  // Rayleigh quotient
      const double mod = std::abs(lambda);
      if (mod > 0.0) {
        lambda /= mod;
      } else {
        lambda = cdouble(1.0, 0.0);
      }
      pairs.push_back({lambda, std::move(v)});
    }
    start = stop;
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    double aa = std::arg(a.value);
    double ab = std::arg(b.value);
    if (aa < 0.0) aa += 2.0 * M_PI;
    if (ab < 0.0) ab += 2.0 * M_PI;
    return aa < ab;
  });
  return pairs;
}

Svd svd_jacobi(const CMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  CMatrix a = m;
  CMatrix v = CMatrix::identity(cols);
  const double scale = std::max(m.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double app = 0.0;
        double aqq = 0.0;
        cdouble apq(0.0, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
          app += std::norm(a(i, p));
          aqq += std::norm(a(i, q));
          apq += std::conj(a(i, p)) * a(i, q);
        }
        if (std::abs(apq) <= 1e-16 * scale * scale &&
            std::abs(apq) <= 1e-15 * std::sqrt(app * aqq)) {
          continue;
        }
        const Rotation2 rot = make_rotation(app, aqq, apq);
        rotate_columns(a, p, q, rot);
        rotate_columns(v, p, q, rot);
        rotated = true;
      }
    }
    if (!rotated) {
      break;
    }
  }

  std::vector<double> sigma(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double nsq = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      nsq += std::norm(a(i, j));
    }
    sigma[j] = std::sqrt(nsq);
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out;
  out.singular_values.resize(cols);
  out.left = CMatrix(rows, cols);
  out.right = CMatrix(cols, cols);
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = sigma[j];
    CVector uj = a.col_vector(j);
    if (sigma[j] > 0.0) {
      uj = uj.scaled(cdouble(1.0 / sigma[j], 0.0));
    }
    out.left.set_col(k, uj);
    out.right.set_col(k, v.col_vector(j));
  }
  return out;
}

std::size_t numeric_rank(const CMatrix& m, Tolerance tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    return 0;
  }
  const Svd s = svd_jacobi(m);
  const double cutoff = tol.eps * s.singular_values.front();
  std::size_t rank = 0;
  for (double sv : s.singular_values) {
    if (sv > cutoff && sv > 0.0) {
      ++rank;
    }
  }
  return rank;
}

std::vector<CVector> null_space(const CMatrix& m, Tolerance tol) {
  const Svd s = svd_jacobi(m);
  const double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  std::vector<CVector> basis;
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
    if (s.singular_values[k] <= tol.eps * smax) {
      basis.push_back(s.right.col_vector(k));
    }
  }
  return basis;
}

SpanDims span_intersection_dim(const std::vector<CMatrix>& sa,
                               const std::vector<CMatrix>& sb,
                               Tolerance tol) {
  if (sa.empty() || sb.empty()) {
    throw ShapeMismatch("span_intersection_dim: empty operator list");
  }
  const std::size_t rows = sa.front().rows();
  const std::size_t cols = sa.front().cols();
  for (const auto* set : {&sa, &sb}) {
    for (const CMatrix& m : *set) {
      if (m.rows() != rows || m.cols() != cols) {
        throw ShapeMismatch("span_intersection_dim: matrices differ in shape");
      }
    }
  }
  const std::size_t vec_dim = rows * cols;
  const auto stack = [vec_dim](const std::vector<CMatrix>& set) {
    CMatrix out(vec_dim, set.size());
    for (std::size_t j = 0; j < set.size(); ++j) {
      out.set_col(j, set[j].vec());
    }
    return out;
  };
  CMatrix a = stack(sa);
  CMatrix b = stack(sb);
  CMatrix joint(vec_dim, sa.size() + sb.size());
  for (std::size_t j = 0; j < sa.size(); ++j) {
    joint.set_col(j, a.col_vector(j));
  }
  for (std::size_t j = 0; j < sb.size(); ++j) {
    joint.set_col(sa.size() + j, b.col_vector(j));
  }
  SpanDims dims;
  dims.dim_a = numeric_rank(a, tol);
  dims.dim_b = numeric_rank(b, tol);
  const std::size_t rank_union = numeric_rank(joint, tol);
  dims.dim_intersection = dims.dim_a + dims.dim_b >= rank_union
                              ? dims.dim_a + dims.dim_b - rank_union
                              : 0;
  return dims;
}

CMatrix complete_unitary(const std::vector<CVector>& columns, std::size_t dim) {
  std::vector<CVector> basis = columns;
  for (std::size_t cand = 0; cand < dim && basis.size() < dim; ++cand) {
    CVector v = basis_state(dim, cand);
    for (const CVector& b : basis) {
      const cdouble overlap = dot(b, v);
      kernels::axpy(-overlap, b.data(), v.data(), dim);
    }
    if (v.norm() > 1e-6) {
      basis.push_back(v.normalized());
    }
  }
  if (basis.size() != dim) {
    throw ShapeMismatch("complete_unitary: could not complete basis");
  }
  CMatrix out(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out.set_col(j, basis[j]);
  }
  return out;
}

std::vector<CVector> subspace_intersection(const std::vector<CVector>& a,
                                           const std::vector<CVector>& b,
                                           Tolerance tol) {
  if (a.empty() || b.empty()) {
    return {};
  }
  const std::size_t dim = a.front().dim();
  // v = A x must satisfy (I - P_B) v = 0; solve in the coordinates of A.
  CMatrix pb(dim, dim);
  for (const CVector& col : b) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        pb(i, j) += col[i] * std::conj(col[j]);
      }
    }
  }
  CMatrix complement = CMatrix::identity(dim) - pb;
  CMatrix abasis(dim, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    abasis.set_col(j, a[j]);
  }
  const CMatrix constrained = complement * abasis;
  // Threshold relative to a unit-scale problem; the inputs are orthonormal.
  Tolerance cut{std::max(tol.eps, 1e-10)};
  std::vector<CVector> coeffs;
  const Svd s = svd_jacobi(constrained);
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
    if (s.singular_values[k] <= cut.eps) {
      coeffs.push_back(s.right.col_vector(k));
    }
  }
  std::vector<CVector> out;
  for (const CVector& x : coeffs) {
    CVector v(dim);
    for (std::size_t j = 0; j < a.size(); ++j) {
      kernels::axpy(x[j], a[j].data(), v.data(), dim);
    }
    const double n = v.norm();
    if (n > 1e-8) {
      out.push_back(v.scaled(cdouble(1.0 / n, 0.0)));
    }
  }
  return out;
}

}  // namespace condgate::num
