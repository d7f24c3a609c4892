#include "condgate/jsondoc.hpp"

#include <cstdio>

namespace condgate::jsondoc {

std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void pad(std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

}  // namespace

void Value::dump(std::string& out, int indent) const {
  switch (kind_) {
    case Kind::Null:
      out += "null";
      break;
    case Kind::Bool:
      out += bool_ ? "true" : "false";
      break;
    case Kind::Int:
      out += std::to_string(int_);
      break;
    case Kind::Double:
      out += format_double(double_);
      break;
    case Kind::String:
      escape_into(out, string_);
      break;
    case Kind::ArrayKind: {
      if (array_.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars print inline; nested containers get one per line.
      bool nested = false;
      for (const Value& v : array_) {
        if (v.kind() == Kind::ArrayKind || v.kind() == Kind::ObjectKind) {
          nested = true;
          break;
        }
      }
      if (!nested) {
        out.push_back('[');
        for (std::size_t i = 0; i < array_.size(); ++i) {
          if (i > 0) out += ", ";
          array_[i].dump(out, indent);
        }
        out.push_back(']');
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < array_.size(); ++i) {
          pad(out, indent + 1);
          array_[i].dump(out, indent + 1);
          if (i + 1 < array_.size()) out.push_back(',');
          out.push_back('\n');
        }
        pad(out, indent);
        out.push_back(']');
      }
      break;
    }
    case Kind::ObjectKind: {
      if (object_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < object_.size(); ++i) {
        pad(out, indent + 1);
        escape_into(out, object_[i].first);
        out += ": ";
        object_[i].second.dump(out, indent + 1);
        if (i + 1 < object_.size()) out.push_back(',');
        out.push_back('\n');
      }
      pad(out, indent);
      out.push_back('}');
      break;
    }
  }
}

std::string Value::dump() const {
  std::string out;
  dump(out, 0);
  out.push_back('\n');
  return out;
}

Value complex_value(num::cdouble z) {
  return Value(Array{Value(z.real()), Value(z.imag())});
}

Value vector_value(const num::CVector& v) {
  Array out;
  out.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out.push_back(complex_value(v[i]));
  }
  return Value(std::move(out));
}

Value matrix_value(const num::CMatrix& m) {
  Array rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Array row;
    row.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(complex_value(m(i, j)));
    }
    rows.push_back(Value(std::move(row)));
  }
  return Value(std::move(rows));
}

}  // namespace condgate::jsondoc
