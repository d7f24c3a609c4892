#include "condgate/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "condgate/decomp.hpp"
#include "condgate/kernels.hpp"

namespace condgate {

using num::cdouble;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

cdouble hs_inner(const Unitary& u, const Unitary& v) {
  if (u.matrix.rows() != v.matrix.rows() ||
      u.matrix.cols() != v.matrix.cols()) {
    throw DimensionMismatch("hs_inner: dimension mismatch");
  }
  return kernels::dotc(u.matrix.data(), v.matrix.data(),
                       u.matrix.rows() * u.matrix.cols());
}

namespace {

struct Point {
  double x;
  double y;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(const Point& a, const Point& b) {
  // Distance from the origin to segment ab.
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len_sq = dx * dx + dy * dy;
  double t = 0.0;
  if (len_sq > 0.0) {
    t = std::clamp((-a.x * dx - a.y * dy) / len_sq, 0.0, 1.0);
  }
  const double px = a.x + t * dx;
  const double py = a.y + t * dy;
  return std::hypot(px, py);
}

// Andrew's monotone chain; collinear points are dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) {
    return pts;
  }
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double origin_hull_distance(const std::vector<std::complex<double>>& points) {
  if (points.empty()) {
    throw ShapeMismatch("origin_hull_distance: no points");
  }
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    pts.push_back({p.real(), p.imag()});
  }
  std::vector<Point> hull = convex_hull(std::move(pts));
  if (hull.size() == 1) {
    return std::hypot(hull[0].x, hull[0].y);
  }
  if (hull.size() == 2) {
    return segment_distance(hull[0], hull[1]);
  }
  // Inside iff the origin is on the inner side of every edge.
  bool inside = true;
  double min_edge = std::numeric_limits<double>::infinity();
  const Point origin{0.0, 0.0};
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, origin) < 0.0) {
      inside = false;
    }
    min_edge = std::min(min_edge, segment_distance(a, b));
  }
  return inside ? 0.0 : min_edge;
}

bool pairwise_perfectly_discriminable(const Unitary& u, const Unitary& v,
                                      num::Tolerance tol) {
  if (u.matrix.rows() != v.matrix.rows()) {
    throw DimensionMismatch(
        "pairwise_perfectly_discriminable: dimension mismatch");
  }
  const std::size_t d = u.matrix.rows();
  if (d == 2) {
    return std::abs(hs_inner(u, v)) <= tol.eps * static_cast<double>(d);
  }
  const num::CMatrix rel = u.matrix.adjoint() * v.matrix;
  std::vector<cdouble> eigenvalues;
  for (const num::Eigenpair& p : num::eig_unitary(rel, tol)) {
    eigenvalues.push_back(p.value);
  }
  return origin_hull_distance(eigenvalues) <= tol.eps;
}

Verdict jointly_discriminable(const GateSet& gs) {
  const num::Tolerance tol = gs.tolerance();
  const double d = static_cast<double>(gs.dimension());
  if (gs.size() <= 1) {
    return Verdict::Yes;
  }
  bool all_orthogonal = true;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      if (std::abs(hs_inner(gs.member(i), gs.member(j))) > tol.eps * d) {
        all_orthogonal = false;
      }
    }
  }
  if (all_orthogonal) {
    // Mutually orthogonal unitaries have orthonormal (1/sqrt(d)) vec(U_n)
    // states, so a maximally entangled probe separates all members.
    return Verdict::Yes;
  }
  if (gs.dimension() == 2) {
    return Verdict::No;
  }
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      if (!pairwise_perfectly_discriminable(gs.member(i), gs.member(j), tol)) {
        return Verdict::No;
      }
    }
  }
  return Verdict::Unknown;
}

DiscriminationReport discrimination_report(const GateSet& gs) {
  DiscriminationReport report;
  const std::size_t n = gs.size();
  report.pairwise.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ok = pairwise_perfectly_discriminable(gs.member(i),
                                                       gs.member(j),
                                                       gs.tolerance());
      report.pairwise[i][j] = ok;
      report.pairwise[j][i] = ok;
    }
  }
  report.jointly = jointly_discriminable(gs);
  return report;
}

}  // namespace condgate
