#pragma once

// Bound quiver algebras kQ/I over F_p with an explicit reduced-path basis.
//
// Path composition convention: the path written "b*a" means "first a, then b".
// A Path stores its arrows in traversal order, so "b*a" is stored as {a, b}.
// Products follow the same rule: basis(i) * basis(j) is "first j, then i".

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "halg/exactla.hpp"

namespace halg {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct RelationNotAdmissible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NilpotencyTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Arrow {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Path {
  VertexId source = 0;
  VertexId target = 0;
  std::vector<ArrowId> arrows;  // traversal order

  std::size_t length() const { return arrows.size(); }
  bool trivial() const { return arrows.empty(); }

  Path reversed() const {
    Path r{target, source, arrows};
    std::reverse(r.arrows.begin(), r.arrows.end());
    return r;
  }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& a, const Path& b) {
    return std::tie(a.source, a.target, a.arrows) <=> std::tie(b.source, b.target, b.arrows);
  }
};

struct RelationTerm {
  Scalar coeff = 1;
  Path path;
  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

struct Relation {
  std::vector<RelationTerm> terms;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct QuiverPresentation {
  Field field;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::size_t nilpotency = 2;

  std::string path_name(const Path& p) const {
    if (p.trivial()) return "e" + vertices.at(p.source);
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
      if (!s.empty()) s += "*";
      s += arrows.at(*it).name;
    }
    return s;
  }

  QuiverPresentation reversed() const {
    QuiverPresentation q = *this;
    for (auto& a : q.arrows) std::swap(a.source, a.target);
    for (auto& r : q.relations)
      for (auto& t : r.terms) t.path = t.path.reversed();
    return q;
  }
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// A finite-dimensional basic algebra with a fixed basis of reduced paths.
class Algebra {
 public:
  const QuiverPresentation& presentation() const { return pres_; }
  const Field& field() const { return pres_.field; }
  std::size_t num_vertices() const { return pres_.vertices.size(); }
  std::size_t num_arrows() const { return pres_.arrows.size(); }
  const Arrow& arrow(ArrowId a) const { return pres_.arrows.at(a); }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis(std::size_t i) const { return basis_.at(i); }
  std::string basis_name(std::size_t i) const { return pres_.path_name(basis_.at(i)); }
  std::size_t idempotent(VertexId v) const { return idempotent_.at(v); }
  std::size_t arrow_element(ArrowId a) const { return arrow_index_.at(a); }
  bool is_opposite() const { return opposite_; }

  /// Basis indices of reduced paths from s to t, in basis order.
  const std::vector<std::size_t>& paths_between(VertexId s, VertexId t) const {
    return between_.at(s * num_vertices() + t);
  }
  /// Position of basis element i within paths_between(source, target).
  std::size_t stratum_position(std::size_t i) const { return stratum_pos_.at(i); }

  /// Indices of the basis elements spanning the radical (non-trivial paths).
  std::vector<std::size_t> radical_basis() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!basis_[i].trivial()) r.push_back(i);
    return r;
  }

  const SparseVec& product(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }

  /// Product of two dense coordinate vectors.
  std::vector<Scalar> multiply(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    const Field& f = field();
    std::vector<Scalar> z(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (!y[j]) continue;
        const Scalar c = f.mul(x[i], y[j]);
        for (auto [k, v] : product(i, j)) z[k] = f.add(z[k], f.mul(c, v));
      }
    }
    return z;
  }

  std::vector<Scalar> unit_vector(std::size_t i) const {
    std::vector<Scalar> v(dim(), 0);
    v.at(i) = 1;
    return v;
  }

  /// Coordinates of an arbitrary path of the quiver (zero if it lies in the ideal).
  std::vector<Scalar> path_vector(const Path& p) const {
    std::vector<Scalar> v = unit_vector(idempotent(p.source));
    for (ArrowId a : p.arrows) v = multiply(unit_vector(arrow_element(a)), v);
    return v;
  }

  /// Exhaustive associativity check on basis triples.
  bool is_associative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          auto ei = unit_vector(i), ej = unit_vector(j), ek = unit_vector(k);
          if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek))) return false;
        }
    return true;
  }

  Algebra opposite() const {
    Algebra op;
    op.pres_ = pres_.reversed();
    op.opposite_ = !opposite_;
    op.basis_.reserve(dim());
    for (const auto& b : basis_) op.basis_.push_back(b.reversed());
    op.idempotent_ = idempotent_;
    op.arrow_index_ = arrow_index_;
    op.table_.resize(table_.size());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) op.table_[i * dim() + j] = product(j, i);
    op.index_strata();
    return op;
  }

  friend Algebra build_algebra(const QuiverPresentation& q);

 private:
  void index_strata() {
    const std::size_t nv = num_vertices();
    between_.assign(nv * nv, {});
    stratum_pos_.assign(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      auto& list = between_[basis_[i].source * nv + basis_[i].target];
      stratum_pos_[i] = list.size();
      list.push_back(i);
    }
  }

  QuiverPresentation pres_;
  bool opposite_ = false;
  std::vector<Path> basis_;
  std::vector<std::size_t> idempotent_;
  std::vector<std::size_t> arrow_index_;
  std::vector<SparseVec> table_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<std::size_t> stratum_pos_;
};

namespace detail {

// Normal-form ordering of paths within a stratum: longer paths lead.
inline bool leads(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  return a.arrows > b.arrows;
}

inline bool basis_order(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.trivial()) return a.source < b.source;
  return std::tie(a.arrows, a.source) < std::tie(b.arrows, b.source);
}

inline void validate(const QuiverPresentation& q) {
  const std::size_t nv = q.vertices.size();
  if (nv == 0) throw std::invalid_argument("quiver has no vertices");
  if (q.nilpotency < 2) throw NilpotencyTooSmall("nilpotency bound must be at least 2");
  for (const auto& a : q.arrows)
    if (a.source >= nv || a.target >= nv) throw std::invalid_argument("arrow '" + a.name + "' has undeclared endpoint");
  for (const auto& r : q.relations) {
    if (r.terms.empty()) continue;
    const auto s = r.terms.front().path.source, t = r.terms.front().path.target;
    for (const auto& term : r.terms) {
      const Path& p = term.path;
      if (p.length() < 2)
        throw RelationNotAdmissible("relation term '" + q.path_name(p) + "' has length < 2");
      if (p.source != s || p.target != t)
        throw RelationNotAdmissible("relation terms are not parallel: '" + q.path_name(p) + "'");
      VertexId at = p.source;
      for (ArrowId a : p.arrows) {
        if (a >= q.arrows.size() || q.arrows[a].source != at)
          throw RelationNotAdmissible("relation term '" + q.path_name(p) + "' is not a composable path");
        at = q.arrows[a].target;
      }
    }
  }
}

// All paths of length <= maxlen, grouped by (source, target).
inline std::vector<std::vector<Path>> enumerate_paths(const QuiverPresentation& q, std::size_t maxlen) {
  const std::size_t nv = q.vertices.size();
  std::vector<std::vector<Path>> out(nv * nv);
  std::vector<Path> frontier;
  for (VertexId v = 0; v < nv; ++v) frontier.push_back(Path{v, v, {}});
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      out[p.source * nv + p.target].push_back(p);
      if (len == maxlen) continue;
      for (ArrowId a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].source == p.target) {
          Path np = p;
          np.arrows.push_back(a);
          np.target = q.arrows[a].target;
          next.push_back(std::move(np));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

inline Path concat(const Path& first, const Path& then) {
  Path p{first.source, then.target, first.arrows};
  p.arrows.insert(p.arrows.end(), then.arrows.begin(), then.arrows.end());
  return p;
}

}  // namespace detail

/// Builds kQ/(I + J^N), checking that every path of length N already lies in
/// I modulo longer paths.
inline Algebra build_algebra(const QuiverPresentation& q) {
  detail::validate(q);
  const Field& f = q.field;
  const std::size_t nv = q.vertices.size();
  const std::size_t N = q.nilpotency;
  auto paths = detail::enumerate_paths(q, N);

  // Per-stratum reduction data.
  struct Stratum {
    std::vector<Path> cols;
    std::map<std::vector<ArrowId>, std::size_t> col_of;
    Mat reduced;
    std::vector<std::size_t> pivots;
    std::vector<bool> is_pivot;
  };
  std::vector<Stratum> strata(nv * nv);

  for (VertexId s = 0; s < nv; ++s)
    for (VertexId t = 0; t < nv; ++t) {
      Stratum& st = strata[s * nv + t];
      st.cols = paths[s * nv + t];
      std::sort(st.cols.begin(), st.cols.end(), detail::leads);
      for (std::size_t c = 0; c < st.cols.size(); ++c) st.col_of[st.cols[c].arrows] = c;

      std::vector<std::vector<Scalar>> gens;
      for (const auto& r : q.relations) {
        if (r.terms.empty()) continue;
        const VertexId rs = r.terms.front().path.source, rt = r.terms.front().path.target;
        for (const auto& w : paths[s * nv + rs])
          for (const auto& u : paths[rt * nv + t]) {
            std::vector<Scalar> row(st.cols.size(), 0);
            bool any = false;
            for (const auto& term : r.terms) {
              Path full = detail::concat(detail::concat(w, term.path), u);
              if (full.length() > N) continue;
              auto c = st.col_of.at(full.arrows);
              row[c] = f.add(row[c], f.reduce(term.coeff));
              any = any || row[c] != 0;
            }
            if (any) gens.push_back(std::move(row));
          }
      }
      Mat g(f, gens.size(), st.cols.size());
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < st.cols.size(); ++j) g(i, j) = gens[i][j];
      auto rr = rref(g);

      // Every length-N path must already be in the row space.
      std::vector<std::size_t> top;
      for (std::size_t c = 0; c < st.cols.size(); ++c)
        if (st.cols[c].length() == N) top.push_back(c);
      if (!top.empty()) {
        Mat withtop(f, gens.size() + top.size(), st.cols.size());
        withtop.set_block(0, 0, g);
        for (std::size_t k = 0; k < top.size(); ++k) withtop(gens.size() + k, top[k]) = 1;
        if (rank(withtop) != rr.rank())
          throw NilpotencyTooSmall("paths of length " + std::to_string(N) + " from " + q.vertices[s] + " to " +
                                   q.vertices[t] + " are not killed by the relations");
      }
      st.reduced = rr.reduced.block(0, 0, rr.rank(), st.cols.size());
      st.pivots = rr.pivots;
      st.is_pivot.assign(st.cols.size(), false);
      for (auto c : st.pivots) st.is_pivot[c] = true;
    }

  Algebra a;
  a.pres_ = q;
  for (const auto& st : strata)
    for (std::size_t c = 0; c < st.cols.size(); ++c)
      if (!st.is_pivot[c]) a.basis_.push_back(st.cols[c]);
  std::sort(a.basis_.begin(), a.basis_.end(), detail::basis_order);
  std::map<Path, std::size_t> index_of;
  for (std::size_t i = 0; i < a.basis_.size(); ++i) index_of[a.basis_[i]] = i;

  a.idempotent_.resize(nv);
  for (VertexId v = 0; v < nv; ++v) a.idempotent_[v] = index_of.at(Path{v, v, {}});
  a.arrow_index_.resize(q.arrows.size());
  for (ArrowId x = 0; x < q.arrows.size(); ++x) {
    Path p{q.arrows[x].source, q.arrows[x].target, {x}};
    auto it = index_of.find(p);
    if (it == index_of.end()) throw RelationNotAdmissible("arrow '" + q.arrows[x].name + "' lies in the ideal");
    a.arrow_index_[x] = it->second;
  }

  auto normal_form = [&](const Path& p) {
    SparseVec out;
    if (p.length() >= N) return out;
    const Stratum& st = strata[p.source * nv + p.target];
    std::vector<Scalar> v(st.cols.size(), 0);
    v[st.col_of.at(p.arrows)] = 1;
    for (std::size_t i = 0; i < st.pivots.size(); ++i) {
      const Scalar x = v[st.pivots[i]];
      if (!x) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.sub(v[c], f.mul(x, st.reduced(i, c)));
    }
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c]) out.emplace_back(index_of.at(st.cols[c]), v[c]);
    std::sort(out.begin(), out.end());
    return out;
  };

  const std::size_t n = a.basis_.size();
  a.table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Path& bi = a.basis_[i];
      const Path& bj = a.basis_[j];
      if (bj.target != bi.source) continue;
      a.table_[i * n + j] = normal_form(detail::concat(bj, bi));
    }
  a.index_strata();
  return a;
}

enum class Side { left, right };

inline Side other(Side s) { return s == Side::left ? Side::right : Side::left; }
inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// An algebra together with its opposite. Right modules over the algebra are
/// stored as left modules over the opposite.
class Ring {
 public:
  explicit Ring(Algebra a) : left_(std::move(a)), right_(left_.opposite()) {}

  static std::shared_ptr<const Ring> make(const QuiverPresentation& q) {
    return std::make_shared<const Ring>(build_algebra(q));
  }

  const Algebra& side(Side s) const { return s == Side::left ? left_ : right_; }
  const Algebra& algebra() const { return left_; }
  const Field& field() const { return left_.field(); }
  std::size_t num_vertices() const { return left_.num_vertices(); }

 private:
  Algebra left_;
  Algebra right_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace halg
