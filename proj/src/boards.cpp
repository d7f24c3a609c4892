#include "condgate/boards.hpp"

#include <cmath>

#include "condgate/tensor.hpp"

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;
using num::basis_state;
using num::kron;

std::vector<std::size_t> CircuitBoard::dims() const {
  std::vector<std::size_t> out;
  out.reserve(wires.size());
  for (const Wire& w : wires) {
    out.push_back(w.dim);
  }
  return out;
}

std::size_t CircuitBoard::total_dim() const {
  return product_dim(dims());
}

CircuitBoard board_from_marking(const MarkingCircuit& mc) {
  CircuitBoard board;
  board.wires.push_back({WireRole::System, mc.system_dim, std::nullopt});
  for (std::size_t a : mc.ancilla_dims) {
    board.wires.push_back({WireRole::Outcome, a, basis_state(a, 0)});
  }
  board.slot_wire = 0;
  board.stages = {mc.pre, mc.post};
  return board;
}

CircuitBoard board_from_control(const ControlCircuit& cc) {
  CircuitBoard board;
  board.wires.push_back({WireRole::Control, 2, std::nullopt});
  board.wires.push_back({WireRole::System, cc.wire_dims[1], std::nullopt});
  for (std::size_t w = 2; w < cc.wire_dims.size(); ++w) {
    const WireRole role = cc.inits[w].has_value() && w == 2 && !cc.single_ancilla_form
                              ? WireRole::Ancilla
                              : WireRole::Outcome;
    board.wires.push_back({role, cc.wire_dims[w], cc.inits[w]});
  }
  board.slot_wire = cc.slot_wire;
  board.stages = {cc.pre, cc.post};
  return board;
}

num::CMatrix apply_board(const CircuitBoard& board, const CMatrix& m) {
  const std::vector<std::size_t> dims = board.dims();
  if (board.slot_wire >= dims.size() ||
      m.rows() != dims[board.slot_wire] || m.cols() != dims[board.slot_wire]) {
    throw DimensionMismatch("apply_board: gate does not fit the slot wire");
  }
  const std::size_t full = board.total_dim();
  for (const CMatrix& stage : board.stages) {
    if (stage.rows() != full || stage.cols() != full) {
      throw DimensionMismatch("apply_board: stage dimension mismatch");
    }
  }
  std::vector<std::optional<CVector>> inits;
  inits.reserve(board.wires.size());
  for (const Wire& w : board.wires) {
    inits.push_back(w.init);
  }
  const CMatrix inserted = embed_operator(m, dims, {board.slot_wire});
  CMatrix acc = board.stages.front() * input_isometry(dims, inits);
  for (std::size_t s = 1; s < board.stages.size(); ++s) {
    acc = board.stages[s] * (inserted * acc);
  }
  return acc;
}

CircuitBoard double_board(const CircuitBoard& board) {
  if (board.stages.size() != 2) {
    throw NotMarkingShape("double_board: board must be single-use");
  }
  if (board.wires[board.slot_wire].init.has_value()) {
    throw NotMarkingShape("double_board: slot wire must be the open input");
  }
  for (std::size_t w = 0; w < board.wires.size(); ++w) {
    if (w != board.slot_wire && !board.wires[w].init.has_value()) {
      throw NotMarkingShape("double_board: side wires must carry ready states");
    }
  }

  CircuitBoard doubled;
  doubled.slot_wire = 0;
  doubled.wires.push_back(board.wires[board.slot_wire]);
  std::vector<std::size_t> first_copy;
  std::vector<std::size_t> second_copy;
  for (std::size_t w = 0; w < board.wires.size(); ++w) {
    if (w == board.slot_wire) {
      continue;
    }
    first_copy.push_back(doubled.wires.size());
    doubled.wires.push_back(board.wires[w]);
  }
  for (std::size_t w = 0; w < board.wires.size(); ++w) {
    if (w == board.slot_wire) {
      continue;
    }
    second_copy.push_back(doubled.wires.size());
    doubled.wires.push_back(board.wires[w]);
  }

  // Stage operators of the original board act on (system, its ancillas); the
  // original wire order must be preserved under the embedding.
  std::vector<std::size_t> embed_first = {0};
  std::vector<std::size_t> embed_second = {0};
  std::size_t fi = 0;
  std::size_t si = 0;
  for (std::size_t w = 0; w < board.wires.size(); ++w) {
    if (w == board.slot_wire) {
      continue;
    }
    embed_first.push_back(first_copy[fi++]);
    embed_second.push_back(second_copy[si++]);
  }
  // Reorder so the slot wire sits where it did originally.
  const auto original_order = [&](std::vector<std::size_t> wires_out) {
    std::vector<std::size_t> ordered;
    std::size_t side = 1;
    for (std::size_t w = 0; w < board.wires.size(); ++w) {
      if (w == board.slot_wire) {
        ordered.push_back(wires_out[0]);
      } else {
        ordered.push_back(wires_out[side++]);
      }
    }
    return ordered;
  };

  const std::vector<std::size_t> dims = doubled.dims();
  const CMatrix pre1 =
      embed_operator(board.stages[0], dims, original_order(embed_first));
  const CMatrix post1 =
      embed_operator(board.stages[1], dims, original_order(embed_first));
  const CMatrix pre2 =
      embed_operator(board.stages[0], dims, original_order(embed_second));
  const CMatrix post2 =
      embed_operator(board.stages[1], dims, original_order(embed_second));

  doubled.stages = {pre1, pre2 * post1, post2};
  return doubled;
}

SideFactorization extract_side_state(const CMatrix& realized,
                                     const CMatrix& expected_action) {
  const std::size_t out_dim = expected_action.rows();
  const std::size_t in_dim = expected_action.cols();
  if (realized.cols() != in_dim || realized.rows() % out_dim != 0) {
    throw ShapeMismatch("extract_side_state: shape mismatch");
  }
  const std::size_t side_dim = realized.rows() / out_dim;
  const double weight = expected_action.frobenius_norm();

  SideFactorization out;
  out.side = CVector(side_dim);
  for (std::size_t k = 0; k < out_dim; ++k) {
    for (std::size_t j = 0; j < in_dim; ++j) {
      const cdouble e = std::conj(expected_action(k, j));
      if (e == cdouble(0.0, 0.0)) {
        continue;
      }
      for (std::size_t m = 0; m < side_dim; ++m) {
        out.side[m] += e * realized(k * side_dim + m, j);
      }
    }
  }
  out.side = out.side.scaled(cdouble(1.0 / (weight * weight), 0.0));

  double residual_sq = 0.0;
  for (std::size_t k = 0; k < out_dim; ++k) {
    for (std::size_t m = 0; m < side_dim; ++m) {
      for (std::size_t j = 0; j < in_dim; ++j) {
        residual_sq += std::norm(realized(k * side_dim + m, j) -
                                 expected_action(k, j) * out.side[m]);
      }
    }
  }
  out.residual = std::sqrt(residual_sq);
  return out;
}

num::CMatrix psi_gram_matrix(const CircuitBoard& board, const GateSet& gs) {
  if (board.wires.empty() || board.wires[board.slot_wire].role != WireRole::System) {
    throw NotMarkingShape("psi_gram_matrix: slot must be the system wire");
  }
  for (std::size_t w = 0; w < board.wires.size(); ++w) {
    if (w != board.slot_wire && !board.wires[w].init.has_value()) {
      throw NotMarkingShape("psi_gram_matrix: side wires must carry ready states");
    }
  }
  const num::Tolerance tol = gs.tolerance();
  const std::size_t d = gs.dimension();
  const std::size_t n = gs.size();

  // The slot wire sits first in the output ordering only when slot_wire == 0;
  // reorder by a swap chain otherwise. Boards produced here always place the
  // system first, so reject the exotic case instead of silently mislabeling.
  if (board.slot_wire != 0) {
    throw NotMarkingShape("psi_gram_matrix: system wire must come first");
  }

  std::vector<CVector> sides;
  sides.reserve(n);
  for (const Unitary& u : gs.members()) {
    CMatrix expected = u.matrix;
    for (std::size_t use = 1; use < board.uses(); ++use) {
      expected = expected * u.matrix;
    }
    // For multi-use boards the preserved action is one U per use in
    // sequence; single-use boards expect exactly U.
    const CMatrix realized = apply_board(board, u.matrix);
    const SideFactorization split =
        extract_side_state(realized, board.uses() == 1 ? u.matrix : expected);
    if (split.residual > tol.eps * static_cast<double>(d) * 10.0) {
      throw Disturbing("psi_gram_matrix: board disturbs member '" + u.name + "'");
    }
    sides.push_back(split.side);
  }

  CMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gram(i, j) = dot(sides[i], sides[j]);
    }
  }
  return gram;
}

}  // namespace condgate
