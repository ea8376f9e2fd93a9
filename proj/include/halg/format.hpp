#pragma once

// Text format for algebras and modules. Grammar (one statement per line, '#'
// starts a comment):
//
//   file      := section*
//   section   := "[algebra]" assignment* | "[modules." NAME "]" assignment*
//   assignment:= KEY "=" value
//   KEY       := ident ("." ident)*
//   value     := INTEGER | STRING | "[" (value ("," value)* ","?)? "]"
//
// [algebra] keys: field (prime p), vertices (strings), arrows (triples
// [name, source, target]), relations (strings), nilpotency (integer N; the
// relations must kill every path of length N, and this is checked).
// A relation is a sum of terms "c path" where a path is arrow names joined by
// '*', read right to left: "b*a" is first a, then b. Names of one character may
// be juxtaposed ("ba"). Trivial paths are written "e<vertex>".
// [modules.NAME] keys: side ("left" by default, or "right"), dims (one per
// vertex), map.<arrow> (row list of shape dim(target) x dim(source); omitted
// maps are zero). Integers are reduced mod p when read.
//
// Arrays may span several lines.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "halg/modcat.hpp"

namespace halg {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct ModuleSpec {
  std::string name;
  Side side = Side::left;
  std::vector<std::size_t> dims;
  std::vector<Mat> maps;  // indexed by arrow
};

struct AlgebraFile {
  QuiverPresentation presentation;
  std::vector<ModuleSpec> modules;

  const ModuleSpec* find(const std::string& name) const {
    for (const auto& m : modules)
      if (m.name == name) return &m;
    return nullptr;
  }
};

namespace format_detail {

struct Value {
  std::size_t line = 0, column = 0;
  std::variant<long long, std::string, std::vector<Value>> v;

  bool is_int() const { return std::holds_alternative<long long>(v); }
  bool is_str() const { return std::holds_alternative<std::string>(v); }
  bool is_list() const { return std::holds_alternative<std::vector<Value>>(v); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column, msg); }
  long long integer() const {
    if (!is_int()) fail("expected an integer");
    return std::get<long long>(v);
  }
  const std::string& str() const {
    if (!is_str()) fail("expected a string");
    return std::get<std::string>(v);
  }
  const std::vector<Value>& list() const {
    if (!is_list()) fail("expected a list");
    return std::get<std::vector<Value>>(v);
  }
};

struct Entry {
  std::string key;
  std::size_t line, column;
  Value value;
};

struct Section {
  std::string name;
  std::size_t line;
  std::vector<Entry> entries;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  std::vector<Section> sections() {
    std::vector<Section> out;
    for (;;) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        const auto l = line_, c = col_;
        get();
        std::string name;
        while (!eof() && peek() != ']' && peek() != '\n') name += get();
        if (eof() || peek() != ']') throw ParseError(l, c, "unterminated section header");
        get();
        end_of_line();
        out.push_back(Section{trim(name), l, {}});
        continue;
      }
      if (out.empty()) throw ParseError(line_, col_, "assignment outside of a section");
      const auto l = line_, c = col_;
      std::string key;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.' ||
                        peek() == '-'))
        key += get();
      if (key.empty()) throw ParseError(l, c, "expected a key");
      skip_spaces();
      if (eof() || peek() != '=') throw ParseError(line_, col_, "expected '='");
      get();
      skip_spaces();
      Value v = value();
      end_of_line();
      out.back().entries.push_back(Entry{key, l, c, std::move(v)});
    }
    return out;
  }

 private:
  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  char get() {
    char ch = s_[i_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }
  void skip_spaces() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
  }
  void skip_comment() {
    if (!eof() && peek() == '#')
      while (!eof() && peek() != '\n') get();
  }
  void skip_blank_lines() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (!eof() && peek() == '\n') {
        get();
        continue;
      }
      return;
    }
  }
  // Inside arrays newlines and comments are insignificant.
  void skip_ws_in_array() { skip_blank_lines(); }
  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (!eof() && peek() != '\n') throw ParseError(line_, col_, std::string("unexpected character '") + peek() + "'");
  }
  static std::string trim(const std::string& x) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  }

  Value value() {
    Value v;
    v.line = line_;
    v.column = col_;
    if (eof() || peek() == '\n') throw ParseError(line_, col_, "expected a value");
    const char ch = peek();
    if (ch == '"') {
      get();
      std::string out;
      while (!eof() && peek() != '"' && peek() != '\n') {
        char x = get();
        if (x == '\\' && !eof() && peek() != '\n') x = get();
        out += x;
      }
      if (eof() || peek() != '"') throw ParseError(v.line, v.column, "unterminated string");
      get();
      v.v = out;
      return v;
    }
    if (ch == '[') {
      get();
      std::vector<Value> items;
      skip_ws_in_array();
      if (!eof() && peek() == ']') {
        get();
        v.v = items;
        return v;
      }
      for (;;) {
        skip_ws_in_array();
        if (!eof() && peek() == ']') {  // trailing comma
          get();
          break;
        }
        items.push_back(value());
        skip_ws_in_array();
        if (eof()) throw ParseError(v.line, v.column, "unterminated list");
        if (peek() == ',') {
          get();
          continue;
        }
        if (peek() == ']') {
          get();
          break;
        }
        throw ParseError(line_, col_, "expected ',' or ']'");
      }
      v.v = std::move(items);
      return v;
    }
    if (ch == '-' || ch == '+' || std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      if (ch == '-' || ch == '+') digits += get();
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
      if (digits.empty() || digits == "-" || digits == "+") throw ParseError(v.line, v.column, "malformed integer");
      try {
        v.v = std::stoll(digits);
      } catch (const std::out_of_range&) {
        throw ParseError(v.line, v.column, "integer out of range");
      }
      return v;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + ch + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

inline Scalar reduce_mod(const Field& f, long long x) {
  const long long p = static_cast<long long>(f.p());
  long long r = x % p;
  if (r < 0) r += p;
  return static_cast<Scalar>(r);
}

inline std::size_t vertex_index(const QuiverPresentation& q, const Value& v) {
  std::string name = v.is_int() ? std::to_string(v.integer()) : v.str();
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    if (q.vertices[i] == name) return i;
  v.fail("unknown vertex '" + name + "'");
}

inline std::optional<ArrowId> arrow_index(const QuiverPresentation& q, const std::string& name) {
  for (ArrowId i = 0; i < q.arrows.size(); ++i)
    if (q.arrows[i].name == name) return i;
  return std::nullopt;
}

// Parses a path written right to left ("b*a", "ba", "e1") into traversal order.
inline Path parse_path(const QuiverPresentation& q, const std::string& word, const Value& where) {
  for (VertexId v = 0; v < q.vertices.size(); ++v)
    if (word == "e" + q.vertices[v]) return Path{v, v, {}};
  std::vector<std::string> names;
  if (word.find('*') != std::string::npos) {
    std::string cur;
    for (char ch : word) {
      if (ch == '*') {
        names.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    names.push_back(cur);
  } else if (arrow_index(q, word)) {
    names.push_back(word);
  } else {
    for (char ch : word) names.emplace_back(1, ch);
  }
  std::vector<ArrowId> ids;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    auto a = arrow_index(q, *it);
    if (!a) where.fail("unknown arrow '" + *it + "' in relation");
    ids.push_back(*a);
  }
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    if (q.arrows[ids[i]].target != q.arrows[ids[i + 1]].source)
      where.fail("path '" + word + "' is not composable");
  return Path{q.arrows[ids.front()].source, q.arrows[ids.back()].target, ids};
}

inline Relation parse_relation(const QuiverPresentation& q, const Value& v) {
  const std::string& text = v.str();
  Relation rel;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool first = true;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    long long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      v.fail("expected '+' or '-' between relation terms");
    }
    long long coeff = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coeff = std::stoll(text.substr(i, j - i));
      i = j;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '+' && text[j] != '-') ++j;
    if (j == i) v.fail("missing path in relation");
    Path p = parse_path(q, text.substr(i, j - i), v);
    i = j;
    const Scalar c = reduce_mod(q.field, sign * coeff);
    if (c != 0) rel.terms.push_back(RelationTerm{c, p});
    first = false;
  }
  if (first) v.fail("empty relation");
  return rel;
}

inline Mat parse_matrix(const Field& f, std::size_t rows, std::size_t cols, const Value& v) {
  const auto& list = v.list();
  if (list.size() != rows)
    v.fail("matrix has " + std::to_string(list.size()) + " rows, expected " + std::to_string(rows));
  Mat m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = list[r].list();
    if (row.size() != cols)
      list[r].fail("matrix row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = reduce_mod(f, row[c].integer());
  }
  return m;
}

}  // namespace format_detail

inline AlgebraFile parse_algebra_file(const std::string& text) {
  using namespace format_detail;
  auto sections = Lexer(text).sections();
  const Section* alg = nullptr;
  for (const auto& s : sections) {
    if (s.name == "algebra") {
      if (alg) throw ParseError(s.line, 1, "duplicate [algebra] section");
      alg = &s;
    } else if (s.name.rfind("modules.", 0) != 0 || s.name.size() == 8) {
      throw ParseError(s.line, 1, "unknown section [" + s.name + "]");
    }
  }
  if (!alg) throw ParseError(1, 1, "missing [algebra] section");

  AlgebraFile out;
  QuiverPresentation& q = out.presentation;
  std::map<std::string, const Entry*> keys;
  for (const auto& e : alg->entries) {
    if (!keys.emplace(e.key, &e).second) throw ParseError(e.line, e.column, "duplicate key '" + e.key + "'");
  }
  auto need = [&](const std::string& k) -> const Value& {
    auto it = keys.find(k);
    if (it == keys.end()) throw ParseError(alg->line, 1, "[algebra] is missing '" + k + "'");
    return it->second->value;
  };
  for (const auto& [k, e] : keys)
    if (k != "field" && k != "vertices" && k != "arrows" && k != "relations" && k != "nilpotency")
      throw ParseError(e->line, e->column, "unknown key '" + k + "'");

  const Value& fv = need("field");
  const long long p = fv.integer();
  if (p < 2 || p > 0x7fffffffLL || !Field::is_prime(static_cast<std::uint64_t>(p))) fv.fail("field must be a prime p");
  q.field = Field(static_cast<Scalar>(p));

  for (const auto& v : need("vertices").list()) {
    std::string name = v.is_int() ? std::to_string(v.integer()) : v.str();
    for (const auto& x : q.vertices)
      if (x == name) v.fail("duplicate vertex '" + name + "'");
    q.vertices.push_back(name);
  }
  if (q.vertices.empty()) need("vertices").fail("at least one vertex is required");
  if (keys.count("arrows")) {
    for (const auto& a : need("arrows").list()) {
      const auto& t = a.list();
      if (t.size() != 3) a.fail("an arrow is [name, source, target]");
      const std::string& name = t[0].str();
      if (name.empty() || name.find_first_of("*+- ") != std::string::npos) t[0].fail("invalid arrow name");
      if (arrow_index(q, name)) t[0].fail("duplicate arrow '" + name + "'");
      q.arrows.push_back(Arrow{name, vertex_index(q, t[1]), vertex_index(q, t[2])});
    }
  }
  q.nilpotency = 2;
  if (keys.count("nilpotency")) {
    const Value& nv = need("nilpotency");
    if (nv.integer() < 2) nv.fail("nilpotency must be at least 2");
    q.nilpotency = static_cast<std::size_t>(nv.integer());
  }
  if (keys.count("relations"))
    for (const auto& r : need("relations").list()) {
      Relation rel = parse_relation(q, r);
      if (!rel.terms.empty()) q.relations.push_back(std::move(rel));
    }

  for (const auto& s : sections) {
    if (s.name == "algebra") continue;
    ModuleSpec m;
    m.name = s.name.substr(8);
    for (const auto& other : out.modules)
      if (other.name == m.name) throw ParseError(s.line, 1, "duplicate module '" + m.name + "'");
    m.maps.assign(q.arrows.size(), Mat());
    std::vector<bool> seen(q.arrows.size(), false);
    const Entry* dims = nullptr;
    for (const auto& e : s.entries)
      if (e.key == "dims") dims = &e;
    if (!dims) throw ParseError(s.line, 1, "module '" + m.name + "' is missing 'dims'");
    for (const auto& d : dims->value.list()) {
      if (d.integer() < 0) d.fail("dimensions are non-negative");
      m.dims.push_back(static_cast<std::size_t>(d.integer()));
    }
    if (m.dims.size() != q.vertices.size()) dims->value.fail("dims needs one entry per vertex");
    for (const auto& e : s.entries) {
      if (e.key == "dims") continue;
      if (e.key == "side") {
        const auto& sv = e.value.str();
        if (sv == "left") m.side = Side::left;
        else if (sv == "right") m.side = Side::right;
        else e.value.fail("side is \"left\" or \"right\"");
        continue;
      }
      if (e.key.rfind("map.", 0) != 0) throw ParseError(e.line, e.column, "unknown key '" + e.key + "'");
      auto a = arrow_index(q, e.key.substr(4));
      if (!a) throw ParseError(e.line, e.column, "unknown arrow '" + e.key.substr(4) + "'");
      if (seen[*a]) throw ParseError(e.line, e.column, "duplicate key '" + e.key + "'");
      seen[*a] = true;
    }
    // Shapes depend on the side, which may come after the maps.
    for (const auto& e : s.entries) {
      if (e.key.rfind("map.", 0) != 0) continue;
      const ArrowId a = *arrow_index(q, e.key.substr(4));
      VertexId src = q.arrows[a].source, dst = q.arrows[a].target;
      if (m.side == Side::right) std::swap(src, dst);
      m.maps[a] = parse_matrix(q.field, m.dims[dst], m.dims[src], e.value);
    }
    for (ArrowId a = 0; a < q.arrows.size(); ++a) {
      if (seen[a]) continue;
      VertexId src = q.arrows[a].source, dst = q.arrows[a].target;
      if (m.side == Side::right) std::swap(src, dst);
      m.maps[a] = Mat(q.field, m.dims[dst], m.dims[src]);
    }
    out.modules.push_back(std::move(m));
  }
  return out;
}

inline Module build_module(const RingPtr& ring, const ModuleSpec& spec) {
  return Module(ring, spec.side, spec.dims, spec.maps);
}

namespace format_detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string relation_text(const QuiverPresentation& q, const Relation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const auto& t = r.terms[i];
    if (i > 0) out += " + ";
    if (t.coeff != 1) out += std::to_string(t.coeff) + " ";
    out += q.path_name(t.path);
  }
  return out;
}

inline std::string matrix_text(const Mat& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ", ";
    out += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ", ";
      out += std::to_string(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace format_detail

/// Canonical text of the [algebra] section.
inline std::string serialize_algebra(const QuiverPresentation& q) {
  using namespace format_detail;
  std::ostringstream os;
  os << "[algebra]\n";
  os << "field = " << q.field.p() << "\n";
  os << "vertices = [";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) os << (i ? ", " : "") << quote(q.vertices[i]);
  os << "]\n";
  os << "arrows = [";
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& a = q.arrows[i];
    os << (i ? ", " : "") << "[" << quote(a.name) << ", " << quote(q.vertices[a.source]) << ", "
       << quote(q.vertices[a.target]) << "]";
  }
  os << "]\n";
  os << "relations = [";
  for (std::size_t i = 0; i < q.relations.size(); ++i) os << (i ? ", " : "") << quote(relation_text(q, q.relations[i]));
  os << "]\n";
  os << "nilpotency = " << q.nilpotency << "\n";
  return os.str();
}

inline std::string serialize_module(const QuiverPresentation& q, const ModuleSpec& m) {
  using namespace format_detail;
  std::ostringstream os;
  os << "[modules." << m.name << "]\n";
  if (m.side == Side::right) os << "side = \"right\"\n";
  os << "dims = [";
  for (std::size_t i = 0; i < m.dims.size(); ++i) os << (i ? ", " : "") << m.dims[i];
  os << "]\n";
  for (ArrowId a = 0; a < q.arrows.size(); ++a) os << "map." << q.arrows[a].name << " = " << matrix_text(m.maps[a]) << "\n";
  return os.str();
}

inline std::string serialize(const AlgebraFile& f) {
  std::string out = serialize_algebra(f.presentation);
  for (const auto& m : f.modules) out += "\n" + serialize_module(f.presentation, m);
  return out;
}

inline ModuleSpec module_spec(const std::string& name, const Module& m) {
  return ModuleSpec{name, m.side(), m.dims(), m.maps()};
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hash of the normalized [algebra] section, as 16 hex digits.
inline std::string fingerprint(const QuiverPresentation& q) {
  const auto h = fnv1a(serialize_algebra(q));
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[15 - i] = hex[(h >> (4 * i)) & 0xf];
  return out;
}

}  // namespace halg
