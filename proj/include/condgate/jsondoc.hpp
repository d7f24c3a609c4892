#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "condgate/matrix.hpp"

// Minimal ordered JSON document used for all emitted files and reports.
// Numbers print with %.17g so identical inputs produce byte-identical output;
// general-purpose JSON libraries choose shortest-roundtrip formatting, which
// is not pinned by any contract.

namespace condgate::jsondoc {

class Value;
using Array = std::vector<Value>;
using Object = std::vector<std::pair<std::string, Value>>;

class Value {
 public:
  enum class Kind { Null, Bool, Int, Double, String, ArrayKind, ObjectKind };

  Value() : kind_(Kind::Null) {}
  Value(bool b) : kind_(Kind::Bool), bool_(b) {}
  Value(std::int64_t i) : kind_(Kind::Int), int_(i) {}
  Value(std::size_t i) : kind_(Kind::Int), int_(static_cast<std::int64_t>(i)) {}
  Value(int i) : kind_(Kind::Int), int_(i) {}
  Value(double d) : kind_(Kind::Double), double_(d) {}
  Value(const char* s) : kind_(Kind::String), string_(s) {}
  Value(std::string s) : kind_(Kind::String), string_(std::move(s)) {}
  Value(Array a) : kind_(Kind::ArrayKind), array_(std::move(a)) {}
  Value(Object o) : kind_(Kind::ObjectKind), object_(std::move(o)) {}

  Kind kind() const { return kind_; }

  void dump(std::string& out, int indent) const;
  std::string dump() const;

 private:
  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double double_ = 0.0;
  std::string string_;
  Array array_;
  Object object_;
};

std::string format_double(double d);

Value complex_value(num::cdouble z);
Value vector_value(const num::CVector& v);
Value matrix_value(const num::CMatrix& m);

}  // namespace condgate::jsondoc
