#include "condgate/gateset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "condgate/jsondoc.hpp"

namespace condgate {

using num::CMatrix;
using num::cdouble;

GateSet::GateSet(std::size_t dimension, std::vector<Unitary> members,
                 num::Tolerance tol)
    : dimension_(dimension), members_(std::move(members)), tol_(tol) {
  if (dimension_ == 0) {
    throw DimensionMismatch("gate set dimension must be positive");
  }
  if (members_.empty()) {
    throw SyntaxError("gate set must contain at least one gate");
  }
  if (tol_.eps < 0.0) {
    throw SyntaxError("tolerance must be nonnegative");
  }
  std::set<std::string> names;
  for (const Unitary& u : members_) {
    if (u.matrix.rows() != dimension_ || u.matrix.cols() != dimension_) {
      throw DimensionMismatch("gate '" + u.name + "' does not match dimension");
    }
    if (!u.matrix.all_finite()) {
      throw SyntaxError("gate '" + u.name + "' has non-finite entries");
    }
    if (num::unitarity_residual(u.matrix) >
        tol_.eps * static_cast<double>(dimension_)) {
      throw NotUnitary("gate '" + u.name + "' is not unitary within tolerance");
    }
    if (!names.insert(u.name).second) {
      throw DuplicateName("duplicate gate name '" + u.name + "'");
    }
  }
}

GateSet GateSet::with_member_matrix(std::size_t i, CMatrix m) const {
  std::vector<Unitary> members = members_;
  members[i].matrix = std::move(m);
  return GateSet(dimension_, std::move(members), tol_);
}

Partition::Partition(std::size_t n_indices,
                     std::vector<std::vector<std::size_t>> blocks)
    : n_indices_(n_indices), blocks_(std::move(blocks)) {
  std::vector<bool> seen(n_indices_, false);
  std::size_t covered = 0;
  for (const auto& block : blocks_) {
    if (block.empty()) {
      throw RangeMismatch("partition block is empty");
    }
    for (std::size_t idx : block) {
      if (idx >= n_indices_ || seen[idx]) {
        throw RangeMismatch("partition is not a disjoint cover");
      }
      seen[idx] = true;
      ++covered;
    }
  }
  if (covered != n_indices_) {
    throw RangeMismatch("partition does not cover the index range");
  }
}

Partition Partition::trivial(std::size_t n_indices) {
  std::vector<std::size_t> all(n_indices);
  for (std::size_t i = 0; i < n_indices; ++i) {
    all[i] = i;
  }
  return Partition(n_indices, {all});
}

Partition Partition::singletons(std::size_t n_indices) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n_indices; ++i) {
    blocks.push_back({i});
  }
  return Partition(n_indices, std::move(blocks));
}

std::size_t Partition::block_of(std::size_t index) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (std::find(blocks_[b].begin(), blocks_[b].end(), index) !=
        blocks_[b].end()) {
      return b;
    }
  }
  throw RangeMismatch("index outside partition range");
}

bool Partition::operator==(const Partition& other) const {
  if (n_indices_ != other.n_indices_) {
    return false;
  }
  auto canon = [](const Partition& p) {
    std::vector<std::vector<std::size_t>> blocks = p.blocks();
    for (auto& b : blocks) {
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
  };
  return canon(*this) == canon(other);
}

namespace {

cdouble parse_complex_entry(const nlohmann::json& cell) {
  if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
      !cell[1].is_number()) {
    throw SyntaxError("matrix entries must be [re, im] pairs");
  }
  const double re = cell[0].get<double>();
  const double im = cell[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw SyntaxError("matrix entries must be finite");
  }
  return {re, im};
}

}  // namespace

GateSet parse_gate_set(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("gate set is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") ||
      !doc["dimension"].is_number_integer()) {
    throw SyntaxError("gate set requires an integer \"dimension\"");
  }
  const long long dim_raw = doc["dimension"].get<long long>();
  if (dim_raw <= 0) {
    throw SyntaxError("\"dimension\" must be positive");
  }
  const std::size_t dim = static_cast<std::size_t>(dim_raw);

  num::Tolerance tol;
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) {
      throw SyntaxError("\"tolerance\" must be a number");
    }
    tol.eps = doc["tolerance"].get<double>();
    if (!(tol.eps >= 0.0)) {
      throw SyntaxError("\"tolerance\" must be nonnegative");
    }
  }

  if (!doc.contains("gates") || !doc["gates"].is_array() ||
      doc["gates"].empty()) {
    throw SyntaxError("gate set requires a nonempty \"gates\" array");
  }

  std::vector<Unitary> members;
  for (const nlohmann::json& g : doc["gates"]) {
    if (!g.is_object() || !g.contains("name") || !g["name"].is_string() ||
        !g.contains("matrix") || !g["matrix"].is_array()) {
      throw SyntaxError("each gate requires \"name\" and \"matrix\"");
    }
    const std::string name = g["name"].get<std::string>();
    const nlohmann::json& rows = g["matrix"];
    if (rows.size() != dim) {
      throw DimensionMismatch("gate '" + name + "' has wrong row count");
    }
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!rows[i].is_array() || rows[i].size() != dim) {
        throw DimensionMismatch("gate '" + name + "' has wrong column count");
      }
      for (std::size_t j = 0; j < dim; ++j) {
        m(i, j) = parse_complex_entry(rows[i][j]);
      }
    }
    members.push_back({name, std::move(m)});
  }
  return GateSet(dim, std::move(members), tol);
}

std::string gate_set_to_json(const GateSet& gs) {
  jsondoc::Array gates;
  for (const Unitary& u : gs.members()) {
    gates.push_back(jsondoc::Value(jsondoc::Object{
        {"name", jsondoc::Value(u.name)},
        {"matrix", jsondoc::matrix_value(u.matrix)},
    }));
  }
  jsondoc::Value doc(jsondoc::Object{
      {"dimension", jsondoc::Value(gs.dimension())},
      {"tolerance", jsondoc::Value(gs.tolerance().eps)},
      {"gates", jsondoc::Value(std::move(gates))},
  });
  return doc.dump();
}

Unitary canonical_representative(const Unitary& u) {
  const CMatrix& m = u.matrix;
  // Column-major scan for the first entry of largest modulus. The relative
  // margin keeps the pivot choice stable across the rounding introduced by
  // the phase multiplication itself, which makes re-canonicalization exact.
  std::size_t best_i = 0;
  std::size_t best_j = 0;
  double best = -1.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double mod = std::abs(m(i, j));
      if (mod > best * (1.0 + 1e-12)) {
        best = mod;
        best_i = i;
        best_j = j;
      }
    }
  }
  const cdouble pivot = m(best_i, best_j);
  if (pivot.imag() == 0.0 && pivot.real() > 0.0) {
    return u;
  }
  const cdouble phase = std::conj(pivot) / std::abs(pivot);
  CMatrix rotated = phase * m;
  // Rounding in the two quotients leaves a few ulps of imaginary part on the
  // pivot; pin it so re-canonicalization is the identity.
  rotated(best_i, best_j) = cdouble(std::abs(pivot), 0.0);
  return {u.name, std::move(rotated)};
}

Partition join_partitions(const Partition& p, const Partition& q) {
  if (p.n_indices() != q.n_indices()) {
    throw RangeMismatch("join_partitions: index ranges differ");
  }
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& pb : p.blocks()) {
    for (const auto& qb : q.blocks()) {
      std::vector<std::size_t> common;
      for (std::size_t idx : pb) {
        if (std::find(qb.begin(), qb.end(), idx) != qb.end()) {
          common.push_back(idx);
        }
      }
      if (!common.empty()) {
        std::sort(common.begin(), common.end());
        blocks.push_back(std::move(common));
      }
    }
  }
  return Partition(p.n_indices(), std::move(blocks));
}

}  // namespace condgate
