#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "c45/dataset.hpp"

namespace c45 {

/// Parse failure with the 1-based line it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// strips a '|' comment, then surrounding whitespace
inline std::string_view strip_comment(std::string_view s) {
  auto bar = s.find('|');
  if (bar != std::string_view::npos) s = s.substr(0, bar);
  return trim(s);
}

inline std::vector<std::string> split_csv(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline bool parse_number(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

}  // namespace detail

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

// C4.5 `.names` file: class labels on the first effective line, then one
// attribute declaration per line ("name: continuous." or "name: v1,v2.").
// '|' starts a comment; declarations end with '.'.
inline Schema parse_names(const std::string& text) {
  Schema schema;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool classes_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (line.back() != '.')
      throw ParseError(line_no, "expected trailing '.'");
    line = detail::trim(line.substr(0, line.size() - 1));
    if (!classes_seen) {
      for (auto& label : detail::split_csv(line)) {
        if (label.empty()) throw ParseError(line_no, "empty class label");
        schema.classes.push_back(std::move(label));
      }
      if (schema.classes.empty()) throw ParseError(line_no, "empty class list");
      classes_seen = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "expected 'name: declaration.'");
    std::string name(detail::trim(line.substr(0, colon)));
    std::string_view decl = detail::trim(line.substr(colon + 1));
    if (name.empty()) throw ParseError(line_no, "empty attribute name");
    for (const auto& a : schema.attributes)
      if (a.name == name)
        throw ParseError(line_no, "duplicate attribute name '" + name + "'");
    if (decl == "continuous") {
      schema.attributes.push_back(AttributeDecl::continuous_attr(std::move(name)));
    } else {
      auto values = detail::split_csv(decl);
      for (const auto& v : values)
        if (v.empty()) throw ParseError(line_no, "empty value in attribute '" + name + "'");
      if (values.empty())
        throw ParseError(line_no, "attribute '" + name + "' declares no values");
      schema.attributes.push_back(AttributeDecl::discrete_attr(std::move(name), std::move(values)));
    }
  }
  if (!classes_seen) throw ParseError(line_no == 0 ? 1 : line_no, "empty class list");
  schema.validate();
  return schema;
}

// `.data` file: one case per line, values in schema order, class label
// last, '?' for unknown, '|' comments, blank lines skipped.
inline Dataset parse_data(const std::string& text, const Schema& schema) {
  Dataset d;
  d.schema = schema;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  const std::size_t n_attrs = schema.attributes.size();
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto fields = detail::split_csv(line);
    if (fields.size() != n_attrs + 1)
      throw ParseError(line_no, "expected " + std::to_string(n_attrs + 1) + " fields, got " +
                                    std::to_string(fields.size()));
    Case c;
    c.values.reserve(n_attrs);
    for (std::size_t i = 0; i < n_attrs; ++i) {
      const std::string& f = fields[i];
      const AttributeDecl& attr = schema.attributes[i];
      if (f == "?") {
        c.values.push_back(Value::unknown_value());
      } else if (attr.continuous()) {
        double x;
        if (!detail::parse_number(f, x))
          throw ParseError(line_no, "unparseable number '" + f + "' for attribute '" +
                                        attr.name + "'");
        c.values.push_back(Value::of_number(x));
      } else {
        auto it = std::find(attr.values.begin(), attr.values.end(), f);
        if (it == attr.values.end())
          throw ParseError(line_no, "value '" + f + "' not declared for attribute '" +
                                        attr.name + "'");
        c.values.push_back(Value::of_index(static_cast<int>(it - attr.values.begin())));
      }
    }
    int cls = schema.class_index(fields.back());
    if (cls < 0)
      throw ParseError(line_no, "class label '" + fields.back() + "' not in schema");
    c.class_index = cls;
    c.weight = 1.0;
    d.cases.push_back(std::move(c));
  }
  return d;
}

inline std::string serialize_names(const Schema& schema, const std::string& header = "") {
  std::string out;
  if (!header.empty()) out += header;
  for (std::size_t j = 0; j < schema.classes.size(); ++j) {
    if (j) out += ", ";
    out += schema.classes[j];
  }
  out += ".\n";
  for (const auto& a : schema.attributes) {
    out += a.name;
    out += ": ";
    if (a.continuous()) {
      out += "continuous";
    } else {
      for (std::size_t v = 0; v < a.values.size(); ++v) {
        if (v) out += ", ";
        out += a.values[v];
      }
    }
    out += ".\n";
  }
  return out;
}

inline std::string serialize_data(const Dataset& d, const std::string& header = "") {
  std::string out;
  if (!header.empty()) out += header;
  for (const auto& c : d.cases) {
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      const Value& v = c.values[i];
      if (v.unknown)
        out += '?';
      else if (d.schema.attributes[i].continuous())
        out += format_double(v.number);
      else
        out += d.schema.attributes[i].values[static_cast<std::size_t>(v.index)];
      out += ',';
    }
    out += d.schema.classes[static_cast<std::size_t>(c.class_index)];
    out += '\n';
  }
  return out;
}

// CSV with a header row; the class column is picked by name and every
// other column becomes an attribute. A column is continuous when all its
// non-'?' entries parse as numbers, otherwise discrete with values in
// order of first appearance.
inline Dataset parse_csv(const std::string& text, const std::string& class_column) {
  std::istringstream in(text);
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(1, "empty CSV");
  auto header = detail::split_csv(detail::trim(raw));
  int class_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == class_column) class_col = static_cast<int>(i);
  if (class_col < 0)
    throw ParseError(1, "class column '" + class_column + "' not in header");

  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    auto fields = detail::split_csv(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }

  Schema schema;
  std::vector<std::size_t> attr_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (static_cast<int>(i) == class_col) continue;
    attr_cols.push_back(i);
    bool numeric = true;
    for (const auto& r : rows) {
      const std::string& f = r[i];
      double x;
      if (f != "?" && !detail::parse_number(f, x)) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      schema.attributes.push_back(AttributeDecl::continuous_attr(header[i]));
    } else {
      std::vector<std::string> values;
      for (const auto& r : rows)
        if (r[i] != "?" && std::find(values.begin(), values.end(), r[i]) == values.end())
          values.push_back(r[i]);
      schema.attributes.push_back(AttributeDecl::discrete_attr(header[i], std::move(values)));
    }
  }
  for (const auto& r : rows) {
    const std::string& label = r[static_cast<std::size_t>(class_col)];
    if (std::find(schema.classes.begin(), schema.classes.end(), label) == schema.classes.end())
      schema.classes.push_back(label);
  }
  schema.validate();

  Dataset d;
  d.schema = schema;
  for (const auto& r : rows) {
    Case c;
    for (std::size_t k = 0; k < attr_cols.size(); ++k) {
      const std::string& f = r[attr_cols[k]];
      const AttributeDecl& attr = schema.attributes[k];
      if (f == "?") {
        c.values.push_back(Value::unknown_value());
      } else if (attr.continuous()) {
        double x;
        detail::parse_number(f, x);
        c.values.push_back(Value::of_number(x));
      } else {
        auto it = std::find(attr.values.begin(), attr.values.end(), f);
        c.values.push_back(Value::of_index(static_cast<int>(it - attr.values.begin())));
      }
    }
    c.class_index = schema.class_index(r[static_cast<std::size_t>(class_col)]);
    d.cases.push_back(std::move(c));
  }
  return d;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace c45
