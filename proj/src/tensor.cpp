#include "condgate/tensor.hpp"

#include <algorithm>

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;

std::size_t product_dim(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) {
    p *= d;
  }
  return p;
}

namespace {

std::vector<std::size_t> digits_of(std::size_t index,
                                   const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t w = dims.size(); w-- > 0;) {
    digits[w] = index % dims[w];
    index /= dims[w];
  }
  return digits;
}

std::size_t index_of(const std::vector<std::size_t>& digits,
                     const std::vector<std::size_t>& dims) {
  std::size_t index = 0;
  for (std::size_t w = 0; w < dims.size(); ++w) {
    index = index * dims[w] + digits[w];
  }
  return index;
}

}  // namespace

CMatrix embed_operator(const CMatrix& op,
                       const std::vector<std::size_t>& wire_dims,
                       const std::vector<std::size_t>& acting_wires) {
  std::vector<std::size_t> acting_dims;
  for (std::size_t w : acting_wires) {
    acting_dims.push_back(wire_dims[w]);
  }
  const std::size_t op_dim = product_dim(acting_dims);
  if (op.rows() != op_dim || op.cols() != op_dim) {
    throw ShapeMismatch("embed_operator: operator does not match wire dims");
  }

  std::vector<std::size_t> rest_wires;
  for (std::size_t w = 0; w < wire_dims.size(); ++w) {
    if (std::find(acting_wires.begin(), acting_wires.end(), w) ==
        acting_wires.end()) {
      rest_wires.push_back(w);
    }
  }
  std::vector<std::size_t> rest_dims;
  for (std::size_t w : rest_wires) {
    rest_dims.push_back(wire_dims[w]);
  }
  const std::size_t rest_dim = product_dim(rest_dims);

  const std::size_t full = product_dim(wire_dims);
  CMatrix out(full, full);
  std::vector<std::size_t> row_digits(wire_dims.size(), 0);
  std::vector<std::size_t> col_digits(wire_dims.size(), 0);
  for (std::size_t r = 0; r < rest_dim; ++r) {
    const std::vector<std::size_t> rdig = digits_of(r, rest_dims);
    for (std::size_t w = 0; w < rest_wires.size(); ++w) {
      row_digits[rest_wires[w]] = rdig[w];
      col_digits[rest_wires[w]] = rdig[w];
    }
    for (std::size_t i = 0; i < op_dim; ++i) {
      const std::vector<std::size_t> idig = digits_of(i, acting_dims);
      for (std::size_t w = 0; w < acting_wires.size(); ++w) {
        row_digits[acting_wires[w]] = idig[w];
      }
      const std::size_t row = index_of(row_digits, wire_dims);
      for (std::size_t j = 0; j < op_dim; ++j) {
        const cdouble value = op(i, j);
        if (value == cdouble(0.0, 0.0)) {
          continue;
        }
        const std::vector<std::size_t> jdig = digits_of(j, acting_dims);
        for (std::size_t w = 0; w < acting_wires.size(); ++w) {
          col_digits[acting_wires[w]] = jdig[w];
        }
        out(row, index_of(col_digits, wire_dims)) = value;
      }
    }
  }
  return out;
}

CMatrix swap_wires(const std::vector<std::size_t>& wire_dims, std::size_t w1,
                   std::size_t w2) {
  if (wire_dims[w1] != wire_dims[w2]) {
    throw ShapeMismatch("swap_wires: wire dimensions differ");
  }
  const std::size_t d = wire_dims[w1];
  CMatrix swap(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      swap(b * d + a, a * d + b) = cdouble(1.0, 0.0);
    }
  }
  return embed_operator(swap, wire_dims, {w1, w2});
}

CMatrix controlled_branch(const CMatrix& op,
                          const std::vector<std::size_t>& wire_dims,
                          std::size_t control_wire, std::size_t branch) {
  if (wire_dims[control_wire] != 2) {
    throw ShapeMismatch("controlled_branch: control wire must be a qubit");
  }
  std::vector<std::size_t> target_wires;
  for (std::size_t w = 0; w < wire_dims.size(); ++w) {
    if (w != control_wire) {
      target_wires.push_back(w);
    }
  }
  const std::size_t rest = product_dim(wire_dims) / 2;
  if (op.rows() != rest || op.cols() != rest) {
    throw ShapeMismatch("controlled_branch: operator dimension mismatch");
  }
  CMatrix projector(2, 2);
  projector(branch, branch) = cdouble(1.0, 0.0);
  CMatrix other(2, 2);
  other(1 - branch, 1 - branch) = cdouble(1.0, 0.0);

  std::vector<std::size_t> all_wires(wire_dims.size());
  for (std::size_t w = 0; w < wire_dims.size(); ++w) {
    all_wires[w] = w;
  }
  // control projector tensored with op on the remaining wires, plus the
  // identity on the opposite branch.
  std::vector<std::size_t> acting;
  acting.push_back(control_wire);
  for (std::size_t w : target_wires) {
    acting.push_back(w);
  }
  const CMatrix active = kron(projector, op) + kron(other, CMatrix::identity(rest));
  return embed_operator(active, wire_dims, acting);
}

CMatrix input_isometry(const std::vector<std::size_t>& wire_dims,
                       const std::vector<std::optional<CVector>>& inits) {
  std::vector<std::size_t> open_wires;
  for (std::size_t w = 0; w < wire_dims.size(); ++w) {
    if (!inits[w].has_value()) {
      open_wires.push_back(w);
    } else if (inits[w]->dim() != wire_dims[w]) {
      throw ShapeMismatch("input_isometry: init state dimension mismatch");
    }
  }
  std::vector<std::size_t> open_dims;
  for (std::size_t w : open_wires) {
    open_dims.push_back(wire_dims[w]);
  }
  const std::size_t in_dim = product_dim(open_dims);
  const std::size_t full = product_dim(wire_dims);
  CMatrix out(full, in_dim);
  std::vector<std::size_t> digits(wire_dims.size(), 0);
  for (std::size_t col = 0; col < in_dim; ++col) {
    const std::vector<std::size_t> odig = digits_of(col, open_dims);
    for (std::size_t w = 0; w < open_wires.size(); ++w) {
      digits[open_wires[w]] = odig[w];
    }
    // Accumulate the product amplitude over prepared wires for every full
    // index compatible with the open assignment.
    std::vector<std::size_t> prepared;
    for (std::size_t w = 0; w < wire_dims.size(); ++w) {
      if (inits[w].has_value()) {
        prepared.push_back(w);
      }
    }
    std::vector<std::size_t> prep_dims;
    for (std::size_t w : prepared) {
      prep_dims.push_back(wire_dims[w]);
    }
    const std::size_t prep_count = product_dim(prep_dims);
    for (std::size_t p = 0; p < prep_count; ++p) {
      const std::vector<std::size_t> pdig = digits_of(p, prep_dims);
      cdouble amp(1.0, 0.0);
      for (std::size_t w = 0; w < prepared.size(); ++w) {
        digits[prepared[w]] = pdig[w];
        amp *= (*inits[prepared[w]])[pdig[w]];
      }
      if (amp != cdouble(0.0, 0.0)) {
        out(index_of(digits, wire_dims), col) = amp;
      }
    }
  }
  return out;
}

CVector tensor_all(const std::vector<CVector>& states) {
  CVector acc(std::vector<cdouble>{cdouble(1.0, 0.0)});
  for (const CVector& s : states) {
    acc = tensor(acc, s);
  }
  return acc;
}

}  // namespace condgate
