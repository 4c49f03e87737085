#pragma once

// Deterministic JSON/CSV emission: floats always printed with 17 significant
// digits, complex numbers as [re, im], keys in insertion order. Identical
// inputs produce byte-identical files.

#include <cstdio>
#include <string>
#include <vector>

#include "spehlab/common.hpp"

namespace spehlab {

inline std::string json_num(double x) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string json_complex(cd z) {
  return "[" + json_num(z.real()) + ", " + json_num(z.imag()) + "]";
}

inline std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  out += '"';
  return out;
}

// Ordered flat JSON object builder; values are pre-rendered raw JSON.
class JsonObj {
 public:
  JsonObj& raw(const std::string& key, const std::string& value) {
    items_.emplace_back(key, value);
    return *this;
  }
  JsonObj& num(const std::string& key, double v) { return raw(key, json_num(v)); }
  JsonObj& integer(const std::string& key, long v) { return raw(key, std::to_string(v)); }
  JsonObj& boolean(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonObj& str(const std::string& key, const std::string& v) { return raw(key, json_str(v)); }
  JsonObj& complex(const std::string& key, cd v) { return raw(key, json_complex(v)); }

  std::string render() const {
    std::string s = "{";
    for (size_t i = 0; i < items_.size(); ++i) {
      s += json_str(items_[i].first) + ": " + items_[i].second;
      if (i + 1 < items_.size()) s += ", ";
    }
    s += "}";
    return s;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

inline std::string json_array(const std::vector<std::string>& rows, bool pretty = true) {
  std::string s = "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (pretty) s += "\n  ";
    s += rows[i];
    if (i + 1 < rows.size()) s += ",";
  }
  if (pretty && !rows.empty()) s += "\n";
  s += "]";
  return s;
}

inline std::string csv_join(const std::vector<std::string>& fields) {
  std::string s;
  for (size_t i = 0; i < fields.size(); ++i) {
    s += fields[i];
    if (i + 1 < fields.size()) s += ",";
  }
  return s;
}

}  // namespace spehlab
