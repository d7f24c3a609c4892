#pragma once

#include <complex>
#include <vector>

#include "condgate/gateset.hpp"

namespace condgate {

enum class Verdict { Yes, No, Unknown };

const char* to_string(Verdict v);

struct DiscriminationReport {
  std::vector<std::vector<bool>> pairwise;  // symmetric, false diagonal
  Verdict jointly = Verdict::Unknown;
};

// tr(u^H v), the Hilbert-Schmidt inner product.
num::cdouble hs_inner(const Unitary& u, const Unitary& v);

// Single-use perfect distinguishability. Qubits: |tr(u^H v)| <= eps * d.
// Larger d: the origin must lie in the convex hull of the eigenvalues of
// u^H v, tested with the hull inflated by eps.
bool pairwise_perfectly_discriminable(const Unitary& u, const Unitary& v,
                                      num::Tolerance tol = {});

// Qubits decide exactly (mutual HS orthogonality); above d = 2 mutual
// orthogonality is sufficient, a failing pair is disqualifying, and anything
// between stays Unknown.
Verdict jointly_discriminable(const GateSet& gs);

DiscriminationReport discrimination_report(const GateSet& gs);

// Distance from the origin to the convex hull of the given points (0 when
// the origin is inside).
double origin_hull_distance(const std::vector<std::complex<double>>& points);

}  // namespace condgate
