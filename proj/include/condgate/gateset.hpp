#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "condgate/matrix.hpp"

namespace condgate {

// A named unitary. The matrix is one concrete representative of the gate;
// gates that differ only by a global phase are the same physical operation,
// but controlled versions of them are not interchangeable.
struct Unitary {
  std::string name;
  num::CMatrix matrix;
};

class GateSet {
 public:
  GateSet(std::size_t dimension, std::vector<Unitary> members,
          num::Tolerance tol = {});

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return members_.size(); }
  const Unitary& member(std::size_t i) const { return members_[i]; }
  const std::vector<Unitary>& members() const { return members_; }
  num::Tolerance tolerance() const { return tol_; }

  GateSet with_member_matrix(std::size_t i, num::CMatrix m) const;

 private:
  std::size_t dimension_;
  std::vector<Unitary> members_;
  num::Tolerance tol_;
};

// Disjoint nonempty blocks covering 0..n_indices-1. Block order is part of
// the value (marking circuits key outcome n to block n).
class Partition {
 public:
  Partition(std::size_t n_indices, std::vector<std::vector<std::size_t>> blocks);

  static Partition trivial(std::size_t n_indices);
  static Partition singletons(std::size_t n_indices);

  std::size_t n_indices() const { return n_indices_; }
  std::size_t n_blocks() const { return blocks_.size(); }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t index) const;
  bool is_trivial() const { return blocks_.size() <= 1; }

  bool operator==(const Partition& other) const;

 private:
  std::size_t n_indices_;
  std::vector<std::vector<std::size_t>> blocks_;
};

// Parses the gate-set JSON document:
//   { "dimension": d, "tolerance": eps?, "gates":
//     [ { "name": "X", "matrix": [[[re,im],...],...] }, ... ] }
GateSet parse_gate_set(std::string_view text);

std::string gate_set_to_json(const GateSet& gs);

// The representative with the first largest-modulus entry (column-major scan)
// made real and strictly positive. Idempotent.
Unitary canonical_representative(const Unitary& u);

// Blockwise intersections of the two partitions: the coarsest partition
// refining both. Block order follows (p block, q block) lexicographically.
Partition join_partitions(const Partition& p, const Partition& q);

}  // namespace condgate
