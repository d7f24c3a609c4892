#pragma once

#include <optional>
#include <vector>

#include "condgate/matrix.hpp"

// Helpers for building operators on a tensor product of wires with mixed
// dimensions. Wire 0 is the leftmost (slowest-varying) factor.

namespace condgate {

std::size_t product_dim(const std::vector<std::size_t>& dims);

// Embeds `op`, acting on the listed wires (in that order), into the full
// product space, identity elsewhere. The listed wires need not be adjacent.
num::CMatrix embed_operator(const num::CMatrix& op,
                            const std::vector<std::size_t>& wire_dims,
                            const std::vector<std::size_t>& acting_wires);

// Swap of two wires of equal dimension, as a full-space unitary.
num::CMatrix swap_wires(const std::vector<std::size_t>& wire_dims,
                        std::size_t w1, std::size_t w2);

// op applied to the non-control wires when the qubit `control_wire` is in
// basis state `branch`, identity on the other branch. `op` acts on all wires
// except the control wire, in wire order.
num::CMatrix controlled_branch(const num::CMatrix& op,
                               const std::vector<std::size_t>& wire_dims,
                               std::size_t control_wire, std::size_t branch);

// Isometry from the open wires (those without an initial state, in wire
// order) into the full space, with the prepared wires fixed to their inits.
num::CMatrix input_isometry(
    const std::vector<std::size_t>& wire_dims,
    const std::vector<std::optional<num::CVector>>& inits);

// Product state over a subset of wires.
num::CVector tensor_all(const std::vector<num::CVector>& states);

}  // namespace condgate
