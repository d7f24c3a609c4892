#include "condgate/circuit_io.hpp"

#include <cmath>

#include <json.hpp>

#include "condgate/jsondoc.hpp"
#include "condgate/tensor.hpp"

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;

namespace {

jsondoc::Value wire_value(const char* role, std::size_t dim,
                          const std::optional<CVector>& init) {
  jsondoc::Object wire{
      {"role", jsondoc::Value(role)},
      {"dim", jsondoc::Value(dim)},
  };
  if (init.has_value()) {
    wire.emplace_back("init", jsondoc::vector_value(*init));
  }
  return jsondoc::Value(std::move(wire));
}

jsondoc::Value partition_value(const Partition& p) {
  jsondoc::Array blocks;
  for (const auto& block : p.blocks()) {
    jsondoc::Array indices;
    for (std::size_t idx : block) {
      indices.push_back(jsondoc::Value(idx));
    }
    blocks.push_back(jsondoc::Value(std::move(indices)));
  }
  return jsondoc::Value(std::move(blocks));
}

jsondoc::Value outcomes_value(const std::vector<CVector>& outcomes) {
  jsondoc::Array out;
  for (const CVector& o : outcomes) {
    out.push_back(jsondoc::vector_value(o));
  }
  return jsondoc::Value(std::move(out));
}

cdouble parse_complex(const nlohmann::json& cell) {
  if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
      !cell[1].is_number()) {
    throw SyntaxError("complex entries must be [re, im] pairs");
  }
  return {cell[0].get<double>(), cell[1].get<double>()};
}

CVector parse_vector(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.empty()) {
    throw SyntaxError("state vectors must be nonempty arrays");
  }
  CVector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[i] = parse_complex(arr[i]);
  }
  return v;
}

CMatrix parse_matrix(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) {
    throw SyntaxError("matrices must be nonempty arrays of rows");
  }
  const std::size_t r = rows.size();
  const std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
  if (c == 0) {
    throw SyntaxError("matrix rows must be nonempty arrays");
  }
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) {
      throw DimensionMismatch("matrix rows differ in length");
    }
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = parse_complex(rows[i][j]);
    }
  }
  return m;
}

Partition parse_partition(const nlohmann::json& blocks, std::size_t n) {
  if (!blocks.is_array()) {
    throw SyntaxError("\"partition\" must be an array of blocks");
  }
  std::vector<std::vector<std::size_t>> out;
  for (const nlohmann::json& block : blocks) {
    if (!block.is_array()) {
      throw SyntaxError("partition blocks must be arrays");
    }
    std::vector<std::size_t> indices;
    for (const nlohmann::json& idx : block) {
      if (!idx.is_number_unsigned()) {
        throw SyntaxError("partition indices must be nonnegative integers");
      }
      indices.push_back(idx.get<std::size_t>());
    }
    out.push_back(std::move(indices));
  }
  try {
    return Partition(n, std::move(out));
  } catch (const RangeMismatch& e) {
    throw SyntaxError(std::string("invalid partition: ") + e.what());
  }
}

nlohmann::json parse_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("circuit is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string marking_to_json(const MarkingCircuit& mc) {
  jsondoc::Array wires;
  wires.push_back(wire_value("system", mc.system_dim, std::nullopt));
  for (std::size_t a : mc.ancilla_dims) {
    wires.push_back(wire_value("outcome", a, num::basis_state(a, 0)));
  }
  jsondoc::Value doc(jsondoc::Object{
      {"kind", jsondoc::Value("marking")},
      {"wires", jsondoc::Value(std::move(wires))},
      {"slot", jsondoc::Value(std::size_t{0})},
      {"pre", jsondoc::matrix_value(mc.pre)},
      {"post", jsondoc::matrix_value(mc.post)},
      {"partition", partition_value(mc.partition)},
      {"outcomes", outcomes_value(mc.outcomes)},
  });
  return doc.dump();
}

std::string control_to_json(const ControlCircuit& cc) {
  jsondoc::Array wires;
  wires.push_back(wire_value("control", 2, std::nullopt));
  wires.push_back(wire_value("system", cc.wire_dims[1], std::nullopt));
  for (std::size_t w = 2; w < cc.wire_dims.size(); ++w) {
    const char* role = (w == cc.slot_wire) ? "ancilla" : "outcome";
    wires.push_back(wire_value(role, cc.wire_dims[w], cc.inits[w]));
  }

  // One declared side state per block.
  std::vector<CVector> per_block;
  for (std::size_t b = 0; b < cc.partition.n_blocks(); ++b) {
    per_block.push_back(cc.declared_outputs[cc.partition.block(b).front()]);
  }

  jsondoc::Array reps;
  for (const Unitary& u : cc.representatives.members()) {
    reps.push_back(jsondoc::Value(jsondoc::Object{
        {"name", jsondoc::Value(u.name)},
        {"matrix", jsondoc::matrix_value(u.matrix)},
    }));
  }

  jsondoc::Value doc(jsondoc::Object{
      {"kind", jsondoc::Value("control")},
      {"wires", jsondoc::Value(std::move(wires))},
      {"slot", jsondoc::Value(cc.slot_wire)},
      {"pre", jsondoc::matrix_value(cc.pre)},
      {"post", jsondoc::matrix_value(cc.post)},
      {"partition", partition_value(cc.partition)},
      {"outcomes", outcomes_value(per_block)},
      {"fixed_vector", jsondoc::vector_value(cc.fixed_vector)},
      {"representatives", jsondoc::Value(std::move(reps))},
  });
  return doc.dump();
}

CircuitKind detect_circuit_kind(std::string_view text) {
  const nlohmann::json doc = parse_document(text);
  if (doc.contains("kind") && doc["kind"].is_string()) {
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "marking") {
      return CircuitKind::Marking;
    }
    if (kind == "control") {
      return CircuitKind::Control;
    }
    throw SyntaxError("unknown circuit kind '" + kind + "'");
  }
  if (doc.contains("wires") && doc["wires"].is_array()) {
    for (const nlohmann::json& w : doc["wires"]) {
      if (w.is_object() && w.contains("role") && w["role"] == "control") {
        return CircuitKind::Control;
      }
    }
    return CircuitKind::Marking;
  }
  throw SyntaxError("circuit document lacks \"wires\"");
}

MarkingCircuit parse_marking_circuit(std::string_view text, num::Tolerance) {
  const nlohmann::json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("wires") || !doc["wires"].is_array() ||
      doc["wires"].empty() || !doc.contains("pre") || !doc.contains("post") ||
      !doc.contains("partition") || !doc.contains("outcomes")) {
    throw SyntaxError("marking circuit document is incomplete");
  }
  MarkingCircuit mc;
  bool saw_system = false;
  for (const nlohmann::json& w : doc["wires"]) {
    if (!w.is_object() || !w.contains("role") || !w.contains("dim") ||
        !w["dim"].is_number_unsigned() || w["dim"].get<std::size_t>() == 0) {
      throw SyntaxError("wires need a role and a positive dim");
    }
    const std::string role = w["role"].get<std::string>();
    const std::size_t dim = w["dim"].get<std::size_t>();
    if (role == "system") {
      if (saw_system) {
        throw SyntaxError("marking circuit must have exactly one system wire");
      }
      saw_system = true;
      mc.system_dim = dim;
    } else {
      mc.ancilla_dims.push_back(dim);
    }
  }
  if (!saw_system) {
    throw SyntaxError("marking circuit lacks a system wire");
  }
  mc.pre = parse_matrix(doc["pre"]);
  mc.post = parse_matrix(doc["post"]);
  const std::size_t total = mc.total_dim();
  if (mc.pre.rows() != total || mc.pre.cols() != total ||
      mc.post.rows() != total || mc.post.cols() != total) {
    throw DimensionMismatch("marking circuit matrices do not match the wires");
  }
  std::size_t n_members = 0;
  for (const nlohmann::json& block : doc["partition"]) {
    n_members += block.is_array() ? block.size() : 0;
  }
  mc.partition = parse_partition(doc["partition"], n_members);
  for (const nlohmann::json& o : doc["outcomes"]) {
    mc.outcomes.push_back(parse_vector(o));
  }
  if (mc.outcomes.size() != mc.partition.n_blocks()) {
    throw DimensionMismatch("outcome count does not match partition blocks");
  }
  for (const CVector& o : mc.outcomes) {
    if (o.dim() != mc.ancilla_dim()) {
      throw DimensionMismatch("outcome state does not match the ancilla space");
    }
  }
  return mc;
}

ControlCircuit parse_control_circuit(std::string_view text, num::Tolerance tol) {
  const nlohmann::json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("wires") || !doc["wires"].is_array() ||
      doc["wires"].size() < 2 || !doc.contains("pre") || !doc.contains("post") ||
      !doc.contains("partition") || !doc.contains("outcomes") ||
      !doc.contains("fixed_vector") || !doc.contains("representatives")) {
    throw SyntaxError("control circuit document is incomplete");
  }

  std::vector<Unitary> reps;
  for (const nlohmann::json& g : doc["representatives"]) {
    if (!g.is_object() || !g.contains("name") || !g.contains("matrix")) {
      throw SyntaxError("representatives need \"name\" and \"matrix\"");
    }
    reps.push_back({g["name"].get<std::string>(), parse_matrix(g["matrix"])});
  }
  if (reps.empty()) {
    throw SyntaxError("control circuit has no representatives");
  }
  const std::size_t d = reps.front().matrix.rows();

  ControlCircuit cc{GateSet(d, reps, tol)};
  for (const nlohmann::json& w : doc["wires"]) {
    if (!w.is_object() || !w.contains("role") || !w.contains("dim") ||
        !w["dim"].is_number_unsigned() || w["dim"].get<std::size_t>() == 0) {
      throw SyntaxError("wires need a role and a positive dim");
    }
    cc.wire_dims.push_back(w["dim"].get<std::size_t>());
    if (w.contains("init")) {
      cc.inits.push_back(parse_vector(w["init"]));
    } else {
      cc.inits.emplace_back(std::nullopt);
    }
  }
  if (cc.wire_dims[0] != 2 || cc.wire_dims[1] != d) {
    throw DimensionMismatch(
        "control circuit wires do not start with a control qubit and system");
  }
  if (!doc.contains("slot") || !doc["slot"].is_number_unsigned()) {
    throw SyntaxError("control circuit requires a \"slot\" wire index");
  }
  cc.slot_wire = doc["slot"].get<std::size_t>();
  if (cc.slot_wire >= cc.wire_dims.size() ||
      cc.wire_dims[cc.slot_wire] != d) {
    throw DimensionMismatch("slot wire does not match the gate dimension");
  }
  cc.pre = parse_matrix(doc["pre"]);
  cc.post = parse_matrix(doc["post"]);
  const std::size_t total = cc.total_dim();
  if (cc.pre.rows() != total || cc.pre.cols() != total ||
      cc.post.rows() != total || cc.post.cols() != total) {
    throw DimensionMismatch("control circuit matrices do not match the wires");
  }
  cc.partition = parse_partition(doc["partition"], reps.size());
  std::vector<CVector> per_block;
  for (const nlohmann::json& o : doc["outcomes"]) {
    per_block.push_back(parse_vector(o));
  }
  if (per_block.size() != cc.partition.n_blocks()) {
    throw DimensionMismatch("outcome count does not match partition blocks");
  }
  const std::size_t side_dim = total / (2 * d);
  for (const CVector& o : per_block) {
    if (o.dim() != side_dim) {
      throw DimensionMismatch("outcome state does not match the side wires");
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    cc.declared_outputs.push_back(per_block[cc.partition.block_of(i)]);
  }
  cc.fixed_vector = parse_vector(doc["fixed_vector"]);
  cc.correction = CMatrix::identity(1);
  return cc;
}

}  // namespace condgate
