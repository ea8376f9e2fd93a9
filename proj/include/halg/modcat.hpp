#pragma once

// The category mod Λ of finite-dimensional modules, realized as quiver
// representations. Right modules are left modules over the opposite algebra;
// every module carries the side it lives on.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/algebra.hpp"
#include "halg/exactla.hpp"

namespace halg {

struct DecompositionInconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caps shared by every randomized or exhaustive search.
struct SearchOptions {
  std::uint64_t enum_cap = 1u << 16;  // exhaustive search when p^dim <= enum_cap
  std::size_t random_trials = 64;
  std::uint64_t seed = 0;
};

class Module {
 public:
  Module() = default;

  /// Validated constructor: shapes, relations and J^N = 0 are checked.
  Module(RingPtr ring, Side side, std::vector<std::size_t> dims, std::vector<Mat> maps)
      : Module(std::move(ring), side, std::move(dims), std::move(maps), trusted{}) {
    validate();
  }

  struct trusted {};
  Module(RingPtr ring, Side side, std::vector<std::size_t> dims, std::vector<Mat> maps, trusted) {
    auto d = std::make_shared<Data>();
    d->ring = std::move(ring);
    d->side = side;
    d->dims = std::move(dims);
    d->maps = std::move(maps);
    d->offsets.resize(d->dims.size());
    for (std::size_t v = 0; v < d->dims.size(); ++v) {
      d->offsets[v] = d->total;
      d->total += d->dims[v];
    }
    d_ = std::move(d);
  }

  static Module zero(RingPtr ring, Side side) {
    const Algebra& a = ring->side(side);
    std::vector<Mat> maps;
    for (ArrowId x = 0; x < a.num_arrows(); ++x) maps.emplace_back(a.field(), 0, 0);
    return Module(ring, side, std::vector<std::size_t>(a.num_vertices(), 0), std::move(maps), trusted{});
  }

  const RingPtr& ring_ptr() const { return d_->ring; }
  const Ring& ring() const { return *d_->ring; }
  Side side() const { return d_->side; }
  const Algebra& algebra() const { return d_->ring->side(d_->side); }
  const Field& field() const { return d_->ring->field(); }
  std::size_t num_vertices() const { return d_->dims.size(); }
  const std::vector<std::size_t>& dims() const { return d_->dims; }
  std::size_t dim(VertexId v) const { return d_->dims.at(v); }
  std::size_t total_dim() const { return d_->total; }
  std::size_t offset(VertexId v) const { return d_->offsets.at(v); }
  bool is_zero() const { return d_->total == 0; }
  const Mat& map(ArrowId a) const { return d_->maps.at(a); }
  const std::vector<Mat>& maps() const { return d_->maps; }

  /// Matrix of a path acting from the space at its source to the space at its target.
  Mat action(const Path& p) const {
    Mat m = Mat::identity(field(), dim(p.source));
    for (ArrowId a : p.arrows) m = map(a) * m;
    return m;
  }
  Mat action(std::size_t basis_index) const { return action(algebra().basis(basis_index)); }

  /// Action matrix of every basis element of the algebra.
  std::vector<Mat> action_table() const {
    std::vector<Mat> t;
    t.reserve(algebra().dim());
    for (std::size_t b = 0; b < algebra().dim(); ++b) t.push_back(action(b));
    return t;
  }

  /// The arrow acting on the total space (block matrix).
  Mat total_map(ArrowId a) const {
    const Arrow& ar = algebra().arrow(a);
    Mat t(field(), total_dim(), total_dim());
    t.set_block(offset(ar.target), offset(ar.source), map(a));
    return t;
  }

  bool same_shape(const Module& o) const {
    return d_->ring == o.d_->ring && side() == o.side() && dims() == o.dims();
  }
  /// Structural equality (same ring object, side, dimensions and matrices).
  friend bool operator==(const Module& a, const Module& b) {
    return a.same_shape(b) && a.maps() == b.maps();
  }

  std::string describe() const {
    std::string s = std::string(side_name(side())) + " module dims=(";
    for (std::size_t v = 0; v < dims().size(); ++v) s += (v ? "," : "") + std::to_string(dims()[v]);
    s += ")";
    for (ArrowId a = 0; a < maps().size(); ++a) s += " " + algebra().arrow(a).name + "=" + map(a).str();
    return s;
  }

 private:
  void validate() const {
    const Algebra& a = algebra();
    if (dims().size() != a.num_vertices()) throw std::invalid_argument("module dimension vector has wrong length");
    if (maps().size() != a.num_arrows()) throw std::invalid_argument("module needs one matrix per arrow");
    for (ArrowId x = 0; x < a.num_arrows(); ++x) {
      const Arrow& ar = a.arrow(x);
      if (map(x).rows() != dim(ar.target) || map(x).cols() != dim(ar.source) || !(map(x).field() == field()))
        throw std::invalid_argument("matrix for arrow '" + ar.name + "' must be " + std::to_string(dim(ar.target)) +
                                    "x" + std::to_string(dim(ar.source)));
    }
    const auto& q = a.presentation();
    for (const auto& r : q.relations) {
      if (r.terms.empty()) continue;
      Mat acc(field(), dim(r.terms.front().path.target), dim(r.terms.front().path.source));
      for (const auto& t : r.terms) acc.axpy(field().reduce(t.coeff), action(t.path));
      if (!acc.is_zero()) throw std::invalid_argument("module does not satisfy the relations");
    }
    auto paths = detail::enumerate_paths(q, q.nilpotency);
    for (const auto& bucket : paths)
      for (const auto& p : bucket)
        if (p.length() == q.nilpotency && !action(p).is_zero())
          throw std::invalid_argument("module is not annihilated by paths of length " + std::to_string(q.nilpotency));
  }

  struct Data {
    RingPtr ring;
    Side side = Side::left;
    std::vector<std::size_t> dims;
    std::vector<Mat> maps;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
  };
  std::shared_ptr<const Data> d_;
};

class Morphism {
 public:
  Morphism() = default;
  Morphism(Module src, Module dst, std::vector<Mat> maps)
      : src_(std::move(src)), dst_(std::move(dst)), maps_(std::move(maps)) {
    if (maps_.size() != src_.num_vertices()) throw std::invalid_argument("morphism needs one matrix per vertex");
    for (VertexId v = 0; v < maps_.size(); ++v)
      if (maps_[v].rows() != dst_.dim(v) || maps_[v].cols() != src_.dim(v))
        throw std::invalid_argument("morphism block has wrong shape at vertex " + std::to_string(v));
  }

  static Morphism zero(const Module& src, const Module& dst) {
    std::vector<Mat> m;
    for (VertexId v = 0; v < src.num_vertices(); ++v) m.emplace_back(src.field(), dst.dim(v), src.dim(v));
    return Morphism(src, dst, std::move(m));
  }
  static Morphism identity(const Module& m) {
    std::vector<Mat> maps;
    for (VertexId v = 0; v < m.num_vertices(); ++v) maps.push_back(Mat::identity(m.field(), m.dim(v)));
    return Morphism(m, m, std::move(maps));
  }

  const Module& source() const { return src_; }
  const Module& target() const { return dst_; }
  const Mat& map(VertexId v) const { return maps_.at(v); }
  const std::vector<Mat>& maps() const { return maps_; }
  const Field& field() const { return src_.field(); }

  /// Commutes with every arrow.
  bool is_valid() const {
    const Algebra& a = src_.algebra();
    for (ArrowId x = 0; x < a.num_arrows(); ++x) {
      const Arrow& ar = a.arrow(x);
      if (!(dst_.map(x) * map(ar.source) == map(ar.target) * src_.map(x))) return false;
    }
    return true;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& m : maps_) r += halg::rank(m);
    return r;
  }
  bool is_zero() const {
    for (const auto& m : maps_)
      if (!m.is_zero()) return false;
    return true;
  }
  bool is_injective() const { return rank() == src_.total_dim(); }
  bool is_surjective() const { return rank() == dst_.total_dim(); }
  bool is_isomorphism() const { return src_.total_dim() == dst_.total_dim() && is_injective(); }

  /// Entries of all vertex blocks, row-major, vertex by vertex.
  std::vector<Scalar> flatten() const {
    std::vector<Scalar> out;
    for (const auto& m : maps_) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
  }

  Morphism scaled(Scalar s) const {
    auto m = maps_;
    for (auto& x : m) x = x.scaled(s);
    return Morphism(src_, dst_, std::move(m));
  }
  friend Morphism operator+(const Morphism& f, const Morphism& g) {
    std::vector<Mat> m;
    for (VertexId v = 0; v < f.maps_.size(); ++v) m.push_back(f.maps_[v] + g.maps_.at(v));
    return Morphism(f.src_, f.dst_, std::move(m));
  }
  friend Morphism operator-(const Morphism& f, const Morphism& g) { return f + g.scaled(f.field().neg(1)); }
  friend bool operator==(const Morphism& f, const Morphism& g) { return f.maps_ == g.maps_; }

 private:
  Module src_;
  Module dst_;
  std::vector<Mat> maps_;
};

/// g ∘ f
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target().dims() != g.source().dims()) throw std::invalid_argument("compose: incompatible morphisms");
  std::vector<Mat> m;
  for (VertexId v = 0; v < f.maps().size(); ++v) m.push_back(g.map(v) * f.map(v));
  return Morphism(f.source(), g.target(), std::move(m));
}

/// A submodule (or any module with a chosen monomorphism) and its inclusion.
struct Sub {
  Module module;
  Morphism inclusion;
};
/// A quotient (or any module with a chosen epimorphism) and its projection.
struct Quot {
  Module module;
  Morphism projection;
};

struct ShortExact {
  Module left, mid, right;
  Morphism inj, surj;

  /// inj injective, surj surjective, image(inj) = kernel(surj).
  bool is_exact() const {
    if (!inj.is_valid() || !surj.is_valid()) return false;
    if (!inj.is_injective() || !surj.is_surjective()) return false;
    if (!compose(surj, inj).is_zero()) return false;
    return left.total_dim() + right.total_dim() == mid.total_dim();
  }
};

// ---------------------------------------------------------------------------
// Subspaces, submodules, quotients

/// Smallest submodule containing the given per-vertex vectors.
inline std::vector<Mat> close_under_arrows(const Module& m, std::vector<Mat> spaces) {
  const Algebra& a = m.algebra();
  for (VertexId v = 0; v < spaces.size(); ++v) spaces[v] = column_basis(spaces[v]);
  bool changed = true;
  while (changed) {
    changed = false;
    for (ArrowId x = 0; x < a.num_arrows(); ++x) {
      const Arrow& ar = a.arrow(x);
      if (spaces[ar.source].cols() == 0) continue;
      Mat img = m.map(x) * spaces[ar.source];
      Mat joined = column_basis(Mat::hstack(spaces[ar.target], img));
      if (joined.cols() > spaces[ar.target].cols()) {
        spaces[ar.target] = joined;
        changed = true;
      }
    }
  }
  return spaces;
}

/// Submodule with the given per-vertex bases (independent columns, closed under arrows).
inline Sub submodule(const Module& m, const std::vector<Mat>& bases) {
  const Algebra& a = m.algebra();
  std::vector<std::size_t> dims;
  for (const auto& b : bases) dims.push_back(b.cols());
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const Arrow& ar = a.arrow(x);
    if (bases[ar.source].cols() == 0 || bases[ar.target].cols() == 0) {
      maps.emplace_back(m.field(), dims[ar.target], dims[ar.source]);
      if (bases[ar.source].cols() && !(m.map(x) * bases[ar.source]).is_zero())
        throw std::invalid_argument("subspace is not closed under arrows");
      continue;
    }
    auto s = solve(bases[ar.target], m.map(x) * bases[ar.source]);
    if (!s) throw std::invalid_argument("subspace is not closed under arrows");
    maps.push_back(*s);
  }
  Module sub(m.ring_ptr(), m.side(), dims, std::move(maps), Module::trusted{});
  return {sub, Morphism(sub, m, bases)};
}

/// Quotient of m by a submodule given by per-vertex bases.
inline Quot quotient(const Module& m, const std::vector<Mat>& bases) {
  const Algebra& a = m.algebra();
  const Field& f = m.field();
  std::vector<Mat> proj;
  std::vector<Mat> sections;
  std::vector<std::size_t> dims;
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    Mat c = complement_basis(bases[v]);
    Mat full = Mat::hstack(bases[v], c);
    Mat inv = *inverse(full);
    proj.push_back(inv.block(bases[v].cols(), 0, c.cols(), m.dim(v)));
    sections.push_back(c);
    dims.push_back(c.cols());
  }
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const Arrow& ar = a.arrow(x);
    maps.push_back(proj[ar.target] * m.map(x) * sections[ar.source]);
  }
  (void)f;
  Module q(m.ring_ptr(), m.side(), dims, std::move(maps), Module::trusted{});
  return {q, Morphism(m, q, std::move(proj))};
}

inline Sub kernel(const Morphism& f) {
  std::vector<Mat> bases;
  for (const auto& m : f.maps()) bases.push_back(kernel_basis(m));
  return submodule(f.source(), bases);
}

inline Sub image(const Morphism& f) {
  std::vector<Mat> bases;
  for (const auto& m : f.maps()) bases.push_back(column_basis(m));
  return submodule(f.target(), bases);
}

inline Quot cokernel(const Morphism& f) {
  std::vector<Mat> bases;
  for (const auto& m : f.maps()) bases.push_back(column_basis(m));
  return quotient(f.target(), bases);
}

inline Sub radical(const Module& m) {
  const Algebra& a = m.algebra();
  std::vector<Mat> spaces;
  for (VertexId v = 0; v < m.num_vertices(); ++v) spaces.emplace_back(m.field(), m.dim(v), 0);
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const VertexId t = a.arrow(x).target;
    spaces[t] = Mat::hstack(spaces[t], m.map(x));
  }
  for (auto& s : spaces) s = column_basis(s);
  return submodule(m, spaces);
}

inline Quot top(const Module& m) {
  auto rad = radical(m);
  return quotient(m, rad.inclusion.maps());
}

/// Joint annihilator of the arrows.
inline Sub socle(const Module& m) {
  const Algebra& a = m.algebra();
  std::vector<Mat> stacked;
  for (VertexId v = 0; v < m.num_vertices(); ++v) stacked.emplace_back(m.field(), 0, m.dim(v));
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const VertexId s = a.arrow(x).source;
    stacked[s] = Mat::vstack(stacked[s], m.map(x));
  }
  std::vector<Mat> bases;
  for (auto& s : stacked) bases.push_back(kernel_basis(s));
  return submodule(m, bases);
}

/// Per-vertex coordinates of the submodule generated by a vector of the total space.
inline std::vector<Mat> cyclic_span(const Module& m, const Mat& total_vector) {
  std::vector<Mat> spaces;
  for (VertexId v = 0; v < m.num_vertices(); ++v) spaces.push_back(total_vector.block(m.offset(v), 0, m.dim(v), 1));
  return close_under_arrows(m, spaces);
}

// ---------------------------------------------------------------------------
// Direct sums

inline Module direct_sum(const Module& a, const Module& b) {
  std::vector<std::size_t> dims;
  for (VertexId v = 0; v < a.num_vertices(); ++v) dims.push_back(a.dim(v) + b.dim(v));
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.maps().size(); ++x) maps.push_back(Mat::block_diag(a.map(x), b.map(x)));
  return Module(a.ring_ptr(), a.side(), dims, std::move(maps), Module::trusted{});
}

inline Module direct_sum(const std::vector<Module>& ms, RingPtr ring, Side side) {
  Module acc = Module::zero(std::move(ring), side);
  for (const auto& m : ms) acc = direct_sum(acc, m);
  return acc;
}

inline Module power(const Module& m, std::size_t r) {
  Module acc = Module::zero(m.ring_ptr(), m.side());
  for (std::size_t i = 0; i < r; ++i) acc = direct_sum(acc, m);
  return acc;
}

/// (f; g): A -> B ⊕ C
inline Morphism stack_targets(const Morphism& f, const Morphism& g) {
  Module t = direct_sum(f.target(), g.target());
  std::vector<Mat> m;
  for (VertexId v = 0; v < f.maps().size(); ++v) m.push_back(Mat::vstack(f.map(v), g.map(v)));
  return Morphism(f.source(), t, std::move(m));
}

/// (f, g): A ⊕ B -> C
inline Morphism stack_sources(const Morphism& f, const Morphism& g) {
  Module s = direct_sum(f.source(), g.source());
  std::vector<Mat> m;
  for (VertexId v = 0; v < f.maps().size(); ++v) m.push_back(Mat::hstack(f.map(v), g.map(v)));
  return Morphism(s, f.target(), std::move(m));
}

/// f ⊕ g
inline Morphism direct_sum(const Morphism& f, const Morphism& g) {
  Module s = direct_sum(f.source(), g.source());
  Module t = direct_sum(f.target(), g.target());
  std::vector<Mat> m;
  for (VertexId v = 0; v < f.maps().size(); ++v) m.push_back(Mat::block_diag(f.map(v), g.map(v)));
  return Morphism(s, t, std::move(m));
}

/// Inclusion of the first (which = 0) or second (which = 1) summand of a ⊕ b.
inline Morphism summand_inclusion(const Module& a, const Module& b, int which) {
  Module s = direct_sum(a, b);
  std::vector<Mat> m;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    Mat x(a.field(), s.dim(v), which == 0 ? a.dim(v) : b.dim(v));
    x.set_block(which == 0 ? 0 : a.dim(v), 0, Mat::identity(a.field(), which == 0 ? a.dim(v) : b.dim(v)));
    m.push_back(x);
  }
  return Morphism(which == 0 ? a : b, s, std::move(m));
}

inline Morphism summand_projection(const Module& a, const Module& b, int which) {
  Module s = direct_sum(a, b);
  std::vector<Mat> m;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    Mat x(a.field(), which == 0 ? a.dim(v) : b.dim(v), s.dim(v));
    x.set_block(0, which == 0 ? 0 : a.dim(v), Mat::identity(a.field(), which == 0 ? a.dim(v) : b.dim(v)));
    m.push_back(x);
  }
  return Morphism(s, which == 0 ? a : b, std::move(m));
}

// ---------------------------------------------------------------------------
// Factorizations

/// Some χ with mono ∘ χ = g, or nullopt if g does not land in the image.
inline std::optional<Morphism> factor_through_mono(const Morphism& mono, const Morphism& g) {
  std::vector<Mat> m;
  for (VertexId v = 0; v < g.maps().size(); ++v) {
    if (mono.source().dim(v) == 0) {
      if (!g.map(v).is_zero()) return std::nullopt;
      m.emplace_back(g.field(), 0, g.source().dim(v));
      continue;
    }
    auto s = solve(mono.map(v), g.map(v));
    if (!s) return std::nullopt;
    m.push_back(*s);
  }
  Morphism chi(g.source(), mono.source(), std::move(m));
  if (!(compose(mono, chi) == g)) return std::nullopt;
  return chi;
}

/// The χ with χ ∘ epi = g, or nullopt if g does not vanish on ker(epi).
inline std::optional<Morphism> factor_through_epi(const Morphism& epi, const Morphism& g) {
  std::vector<Mat> m;
  for (VertexId v = 0; v < g.maps().size(); ++v) {
    // χ_v e_v = g_v  <=>  e_v^T χ_v^T = g_v^T
    if (epi.target().dim(v) == 0) {
      if (!g.map(v).is_zero()) return std::nullopt;
      m.emplace_back(g.field(), g.target().dim(v), 0);
      continue;
    }
    auto s = solve(epi.map(v).transposed(), g.map(v).transposed());
    if (!s) return std::nullopt;
    m.push_back(s->transposed());
  }
  Morphism chi(epi.target(), g.target(), std::move(m));
  if (!(compose(chi, epi) == g)) return std::nullopt;
  return chi;
}

// ---------------------------------------------------------------------------
// Projectives, injectives, simples

/// A direct sum of indecomposable projectives P(gens[0]) ⊕ P(gens[1]) ⊕ ...
struct ProjModule {
  Module module;
  std::vector<VertexId> gens;

  /// Offset of summand k inside the space at vertex w.
  std::size_t component_offset(VertexId w, std::size_t k) const {
    const Algebra& a = module.algebra();
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) off += a.paths_between(gens[j], w).size();
    return off;
  }
  /// The generator e_{gens[k]} of summand k, as a column at vertex gens[k].
  Mat generator(std::size_t k) const {
    const Algebra& a = module.algebra();
    const VertexId v = gens[k];
    return Mat::unit(module.field(), module.dim(v),
                     component_offset(v, k) + a.stratum_position(a.idempotent(v)));
  }
};

inline ProjModule projective_sum(RingPtr ring, Side side, std::vector<VertexId> gens) {
  const Algebra& a = ring->side(side);
  const std::size_t nv = a.num_vertices();
  std::vector<std::vector<std::size_t>> off(nv, std::vector<std::size_t>(gens.size() + 1, 0));
  std::vector<std::size_t> dims(nv, 0);
  for (VertexId w = 0; w < nv; ++w) {
    for (std::size_t k = 0; k < gens.size(); ++k)
      off[w][k + 1] = off[w][k] + a.paths_between(gens[k], w).size();
    dims[w] = off[w][gens.size()];
  }
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const Arrow& ar = a.arrow(x);
    Mat m(a.field(), dims[ar.target], dims[ar.source]);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto& from = a.paths_between(gens[k], ar.source);
      for (std::size_t pos = 0; pos < from.size(); ++pos)
        for (auto [idx, c] : a.product(a.arrow_element(x), from[pos]))
          m(off[ar.target][k] + a.stratum_position(idx), off[ar.source][k] + pos) = c;
    }
    maps.push_back(m);
  }
  Module mod(ring, side, dims, std::move(maps), Module::trusted{});
  return {mod, std::move(gens)};
}

inline Module projective(RingPtr ring, Side side, VertexId v) {
  return projective_sum(std::move(ring), side, {v}).module;
}

/// The regular module Λ = ⊕_v P(v) on the given side.
inline ProjModule regular(RingPtr ring, Side side) {
  std::vector<VertexId> g(ring->num_vertices());
  for (VertexId v = 0; v < g.size(); ++v) g[v] = v;
  return projective_sum(std::move(ring), side, g);
}

inline Module simple(RingPtr ring, Side side, VertexId v) {
  const Algebra& a = ring->side(side);
  std::vector<std::size_t> dims(a.num_vertices(), 0);
  dims.at(v) = 1;
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.num_arrows(); ++x)
    maps.emplace_back(a.field(), dims[a.arrow(x).target], dims[a.arrow(x).source]);
  return Module(ring, side, dims, std::move(maps), Module::trusted{});
}

/// The k-linear dual D = Hom_k(-, k); swaps sides.
inline Module k_dual(const Module& m) {
  std::vector<Mat> maps;
  for (const auto& x : m.maps()) maps.push_back(x.transposed());
  return Module(m.ring_ptr(), other(m.side()), m.dims(), std::move(maps), Module::trusted{});
}

inline Morphism k_dual(const Morphism& f) {
  std::vector<Mat> maps;
  for (const auto& x : f.maps()) maps.push_back(x.transposed());
  return Morphism(k_dual(f.target()), k_dual(f.source()), std::move(maps));
}

inline Module injective(RingPtr ring, Side side, VertexId v) {
  return k_dual(projective(std::move(ring), other(side), v));
}

/// The morphism ⊕P(gens[k]) -> n sending generator k to images[k] (a column at vertex gens[k]).
inline Morphism from_generator_images(const ProjModule& p, const Module& n, const std::vector<Mat>& images) {
  const Algebra& a = p.module.algebra();
  std::vector<Mat> maps;
  for (VertexId w = 0; w < a.num_vertices(); ++w) {
    Mat m(a.field(), n.dim(w), p.module.dim(w));
    std::size_t col = 0;
    for (std::size_t k = 0; k < p.gens.size(); ++k)
      for (std::size_t idx : a.paths_between(p.gens[k], w)) {
        m.set_block(0, col, n.action(idx) * images.at(k));
        ++col;
      }
    maps.push_back(m);
  }
  return Morphism(p.module, n, std::move(maps));
}

inline std::vector<Mat> generator_images(const ProjModule& p, const Morphism& f) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < p.gens.size(); ++k) out.push_back(f.map(p.gens[k]) * p.generator(k));
  return out;
}

inline ProjModule dual_projective(const ProjModule& p) {
  return projective_sum(p.module.ring_ptr(), other(p.module.side()), p.gens);
}

/// For d: P -> Q between sums of projectives, the dual d*: Q* -> P* under the
/// canonical identification (Λe_v)* ≅ e_vΛ.
inline Morphism dual_projective_map(const ProjModule& p, const ProjModule& q, const Morphism& d) {
  const Algebra& a = p.module.algebra();
  ProjModule ps = dual_projective(p), qs = dual_projective(q);
  auto dg = generator_images(p, d);  // dg[j] lives in Q at vertex p.gens[j]
  std::vector<Mat> images;
  for (std::size_t k = 0; k < q.gens.size(); ++k) {
    const VertexId u = q.gens[k];
    Mat img(a.field(), ps.module.dim(u), 1);
    std::size_t row = 0;
    for (std::size_t j = 0; j < p.gens.size(); ++j) {
      const VertexId v = p.gens[j];
      const std::size_t len = a.paths_between(u, v).size();
      const std::size_t src = q.component_offset(v, k);
      for (std::size_t t = 0; t < len; ++t) img(row + t, 0) = dg[j](src + t, 0);
      row += len;
    }
    images.push_back(img);
  }
  return from_generator_images(qs, ps.module, images);
}

// ---------------------------------------------------------------------------
// Hom spaces

/// An F_p-basis of Hom(src, dst) with fast coordinates.
struct HomSpace {
  Module src, dst;
  std::vector<Morphism> basis;
  std::vector<std::size_t> free_positions;  // coordinates of f are its flattened entries here

  std::size_t dim() const { return basis.size(); }

  std::vector<Scalar> coordinates(const Morphism& f) const {
    auto flat = f.flatten();
    std::vector<Scalar> c;
    c.reserve(free_positions.size());
    for (auto pos : free_positions) c.push_back(flat[pos]);
    return c;
  }
  Morphism combination(const std::vector<Scalar>& c) const {
    Morphism f = Morphism::zero(src, dst);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c[i]) f = f + basis[i].scaled(c[i]);
    return f;
  }
};

namespace detail {

inline Morphism unflatten(const Module& src, const Module& dst, const Mat& column) {
  std::vector<Mat> maps;
  std::size_t pos = 0;
  for (VertexId v = 0; v < src.num_vertices(); ++v) {
    Mat m(src.field(), dst.dim(v), src.dim(v));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = column(pos++, 0);
    maps.push_back(m);
  }
  return Morphism(src, dst, std::move(maps));
}

}  // namespace detail

inline HomSpace hom_space(const Module& m, const Module& n) {
  if (m.ring_ptr() != n.ring_ptr() || m.side() != n.side()) throw std::invalid_argument("hom: modules on different sides");
  const Algebra& a = m.algebra();
  const Field& f = m.field();
  std::vector<std::size_t> off(m.num_vertices() + 1, 0);
  for (VertexId v = 0; v < m.num_vertices(); ++v) off[v + 1] = off[v] + n.dim(v) * m.dim(v);
  const std::size_t unknowns = off.back();
  std::size_t eqs = 0;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) eqs += n.dim(a.arrow(x).target) * m.dim(a.arrow(x).source);
  Mat c(f, eqs, unknowns);
  std::size_t row = 0;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const VertexId v = a.arrow(x).source, w = a.arrow(x).target;
    const Mat& na = n.map(x);
    const Mat& ma = m.map(x);
    const std::size_t dmv = m.dim(v), dnv = n.dim(v), dmw = m.dim(w), dnw = n.dim(w);
    // (N_a f_v - f_w M_a)(r, c)
    for (std::size_t r = 0; r < dnw; ++r)
      for (std::size_t col = 0; col < dmv; ++col, ++row) {
        for (std::size_t s = 0; s < dnv; ++s)
          if (na(r, s)) c(row, off[v] + s * dmv + col) = f.add(c(row, off[v] + s * dmv + col), na(r, s));
        for (std::size_t s = 0; s < dmw; ++s)
          if (ma(s, col)) c(row, off[w] + r * dmw + s) = f.sub(c(row, off[w] + r * dmw + s), ma(s, col));
      }
  }
  HomSpace h{m, n, {}, {}};
  if (unknowns == 0) return h;
  auto [r, piv] = rref(c);
  std::vector<bool> is_piv(unknowns, false);
  for (auto p : piv) is_piv[p] = true;
  for (std::size_t u = 0; u < unknowns; ++u)
    if (!is_piv[u]) h.free_positions.push_back(u);
  Mat k(f, unknowns, h.free_positions.size());
  for (std::size_t t = 0; t < h.free_positions.size(); ++t) {
    k(h.free_positions[t], t) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], t) = f.neg(r(i, h.free_positions[t]));
  }
  for (std::size_t t = 0; t < k.cols(); ++t) h.basis.push_back(detail::unflatten(m, n, k.col(t)));
  return h;
}

inline std::vector<Morphism> hom_basis(const Module& m, const Module& n) { return hom_space(m, n).basis; }

inline std::size_t hom_dim(const Module& m, const Module& n) { return hom_space(m, n).dim(); }

/// Rank of Hom(x, f): Hom(x, A) -> Hom(x, B), i.e. dim of maps x -> B factoring through f.
inline std::size_t lift_rank(const Module& x, const Morphism& f) {
  auto h = hom_space(x, f.source());
  auto hb = hom_space(x, f.target());
  Mat m(x.field(), hb.dim(), h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) {
    auto c = hb.coordinates(compose(f, h.basis[i]));
    for (std::size_t r = 0; r < c.size(); ++r) m(r, i) = c[r];
  }
  return rank(m);
}

/// Every map x -> f.target() factors through f.
inline bool lifts_through(const Module& x, const Morphism& f) {
  return lift_rank(x, f) == hom_dim(x, f.target());
}

/// Every map f.source() -> y extends along f.
inline bool extends_along(const Morphism& f, const Module& y) {
  auto h = hom_space(f.target(), y);
  auto hs = hom_space(f.source(), y);
  Mat m(y.field(), hs.dim(), h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) {
    auto c = hs.coordinates(compose(h.basis[i], f));
    for (std::size_t r = 0; r < c.size(); ++r) m(r, i) = c[r];
  }
  return rank(m) == hs.dim();
}

// ---------------------------------------------------------------------------
// Covers and envelopes

struct ProjectiveCover {
  ProjModule projective;
  Morphism map;  // P -> m, surjective, kernel inside rad P
};

inline ProjectiveCover projective_cover(const Module& m) {
  auto rad = radical(m);
  std::vector<VertexId> gens;
  std::vector<Mat> images;
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    Mat c = complement_basis(rad.inclusion.map(v));
    for (std::size_t j = 0; j < c.cols(); ++j) {
      gens.push_back(v);
      images.push_back(c.col(j));
    }
  }
  auto p = projective_sum(m.ring_ptr(), m.side(), gens);
  return {p, from_generator_images(p, m, images)};
}

struct InjectiveEnvelope {
  Module injective;
  std::vector<VertexId> gens;  // injective = ⊕ I(gens[k])
  Morphism map;                // m -> I, injective, socle-essential
};

inline InjectiveEnvelope injective_envelope(const Module& m) {
  auto cover = projective_cover(k_dual(m));
  return {k_dual(cover.projective.module), cover.projective.gens, k_dual(cover.map)};
}

// ---------------------------------------------------------------------------
// Duality (-)* = Hom(-, Λ)

/// m* as a module on the opposite side; basis[v] spans Hom(m, P(v)) = (m*)e_v.
struct DualModule {
  Module module;
  std::vector<HomSpace> basis;
};

inline DualModule dual_star(const Module& m) {
  const Algebra& a = m.algebra();
  const std::size_t nv = a.num_vertices();
  std::vector<ProjModule> ps;
  std::vector<HomSpace> hs;
  std::vector<std::size_t> dims;
  for (VertexId v = 0; v < nv; ++v) {
    ps.push_back(projective_sum(m.ring_ptr(), m.side(), {v}));
    hs.push_back(hom_space(m, ps.back().module));
    dims.push_back(hs.back().dim());
  }
  std::vector<Mat> maps;
  for (ArrowId x = 0; x < a.num_arrows(); ++x) {
    const VertexId v = a.arrow(x).source, w = a.arrow(x).target;
    // right multiplication by the arrow: P(w) -> P(v), e_w -> x
    Mat img(a.field(), ps[v].module.dim(w), 1);
    img(a.stratum_position(a.arrow_element(x)), 0) = 1;
    Morphism rmul = from_generator_images(ps[w], ps[v].module, {img});
    Mat mat(a.field(), dims[v], dims[w]);
    for (std::size_t i = 0; i < hs[w].dim(); ++i) {
      auto c = hs[v].coordinates(compose(rmul, hs[w].basis[i]));
      for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
    }
    maps.push_back(mat);
  }
  Module dm(m.ring_ptr(), other(m.side()), dims, std::move(maps), Module::trusted{});
  return {dm, std::move(hs)};
}

/// g* : N* -> M* for g : M -> N, in the bases chosen by dual_star.
inline Morphism dual_star(const Morphism& g, const DualModule& ms, const DualModule& ns) {
  std::vector<Mat> maps;
  for (VertexId v = 0; v < g.source().num_vertices(); ++v) {
    Mat mat(g.field(), ms.basis[v].dim(), ns.basis[v].dim());
    for (std::size_t i = 0; i < ns.basis[v].dim(); ++i) {
      auto c = ms.basis[v].coordinates(compose(ns.basis[v].basis[i], g));
      for (std::size_t r = 0; r < c.size(); ++r) mat(r, i) = c[r];
    }
    maps.push_back(mat);
  }
  return Morphism(ns.module, ms.module, std::move(maps));
}

struct Evaluation {
  DualModule dual;        // m*
  DualModule double_dual; // m**
  Morphism sigma;         // m -> m**
};

/// The evaluation map σ(x)(f) = f(x).
inline Evaluation evaluation(const Module& m) {
  DualModule d1 = dual_star(m);
  DualModule d2 = dual_star(d1.module);
  const Algebra& a = m.algebra();
  const std::size_t nv = a.num_vertices();
  std::vector<Mat> sig;
  for (VertexId v = 0; v < nv; ++v) {
    const Module& pv = d2.basis[v].dst;  // P'(v) on the opposite side
    Mat s(m.field(), d2.basis[v].dim(), m.dim(v));
    for (std::size_t i = 0; i < m.dim(v); ++i) {
      Mat x = Mat::unit(m.field(), m.dim(v), i);
      std::vector<Mat> maps;
      for (VertexId w = 0; w < nv; ++w) {
        Mat col(m.field(), pv.dim(w), d1.basis[w].dim());
        for (std::size_t t = 0; t < d1.basis[w].dim(); ++t) col.set_block(0, t, d1.basis[w].basis[t].map(v) * x);
        maps.push_back(col);
      }
      auto c = d2.basis[v].coordinates(Morphism(d1.module, pv, std::move(maps)));
      for (std::size_t r = 0; r < c.size(); ++r) s(r, i) = c[r];
    }
    sig.push_back(s);
  }
  Morphism sigma(m, d2.module, std::move(sig));
  return {std::move(d1), std::move(d2), std::move(sigma)};
}

inline bool is_torsionless(const Module& m) { return evaluation(m).sigma.is_injective(); }
inline bool is_reflexive(const Module& m) { return evaluation(m).sigma.is_isomorphism(); }

// ---------------------------------------------------------------------------
// Presentations and the transpose

struct MinimalPresentation {
  ProjectiveCover cover0;  // P0 -> m
  Sub syzygy;              // Ω m ⊆ P0
  ProjectiveCover cover1;  // P1 -> Ω m
  Morphism d1;             // P1 -> P0
};

inline MinimalPresentation minimal_presentation(const Module& m) {
  auto c0 = projective_cover(m);
  auto om = kernel(c0.map);
  auto c1 = projective_cover(om.module);
  auto d1 = compose(om.inclusion, c1.map);
  return {std::move(c0), std::move(om), std::move(c1), std::move(d1)};
}

/// Tr m = Coker(P0* -> P1*), from the minimal presentation; lives on the opposite side.
inline Quot transpose_with_projection(const Module& m) {
  auto pres = minimal_presentation(m);
  auto dual = dual_projective_map(pres.cover1.projective, pres.cover0.projective, pres.d1);
  return cokernel(dual);
}

inline Module transpose(const Module& m) { return transpose_with_projection(m).module; }

// ---------------------------------------------------------------------------
// Pushouts

struct Pushout {
  Module module;
  Morphism from_b;  // B -> P
  Morphism from_c;  // C -> P
};

/// Pushout of B <-f- A -g-> C.
inline Pushout pushout(const Morphism& f, const Morphism& g) {
  auto q = cokernel(stack_targets(f, g.scaled(f.field().neg(1))));
  const Module& b = f.target();
  const Module& c = g.target();
  return {q.module, compose(q.projection, summand_inclusion(b, c, 0)),
          compose(q.projection, summand_inclusion(b, c, 1))};
}

// ---------------------------------------------------------------------------
// Isomorphism and decomposition

enum class Verdict { yes, no, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "inconclusive";
  }
}

struct IsoResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<Morphism> iso;
};

namespace detail {

inline bool exhaustible(const Field& f, std::size_t dim, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= f.p();
    if (n > cap) return false;
  }
  return true;
}

/// Visits every coefficient vector of F_p^dim (until visit returns true).
template <class Visit>
bool for_each_vector(const Field& f, std::size_t dim, Visit&& visit) {
  std::vector<Scalar> c(dim, 0);
  while (true) {
    if (visit(c)) return true;
    std::size_t i = 0;
    while (i < dim && ++c[i] == f.p()) c[i++] = 0;
    if (i == dim) return false;
  }
}

inline std::vector<Scalar> random_vector(const Field& f, std::size_t dim, std::mt19937_64& rng) {
  std::vector<Scalar> c(dim);
  for (auto& x : c) x = static_cast<Scalar>(rng() % f.p());
  return c;
}

}  // namespace detail

inline IsoResult is_isomorphic(const Module& m, const Module& n, const SearchOptions& opt = {}) {
  if (m.ring_ptr() != n.ring_ptr() || m.side() != n.side()) throw std::invalid_argument("is_isomorphic: sides differ");
  if (m.dims() != n.dims()) return {Verdict::no, std::nullopt};
  if (m.is_zero()) return {Verdict::yes, Morphism::identity(m)};
  auto h = hom_space(m, n);
  if (h.dim() != hom_dim(m, m) || h.dim() != hom_dim(n, n) || h.dim() != hom_dim(n, m)) return {Verdict::no, std::nullopt};
  const Field& f = m.field();
  for (const auto& b : h.basis)
    if (b.is_isomorphism()) return {Verdict::yes, b};
  std::mt19937_64 rng(opt.seed);
  for (std::size_t t = 0; t < opt.random_trials; ++t) {
    auto g = h.combination(detail::random_vector(f, h.dim(), rng));
    if (g.is_isomorphism()) return {Verdict::yes, g};
  }
  if (detail::exhaustible(f, h.dim(), opt.enum_cap)) {
    std::optional<Morphism> found;
    detail::for_each_vector(f, h.dim(), [&](const std::vector<Scalar>& c) {
      auto g = h.combination(c);
      if (g.is_isomorphism()) {
        found = g;
        return true;
      }
      return false;
    });
    if (found) return {Verdict::yes, found};
    return {Verdict::no, std::nullopt};
  }
  return {Verdict::inconclusive, std::nullopt};
}

struct Summand {
  Module module;
  Morphism inclusion;   // summand -> m
  Morphism projection;  // m -> summand
};

struct Decomposition {
  std::vector<Summand> summands;
  std::vector<std::size_t> iso_class;  // summands with equal class are isomorphic
  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> mult;
    for (auto c : iso_class) {
      if (c >= mult.size()) mult.resize(c + 1, 0);
      ++mult[c];
    }
    return mult;
  }
};

namespace detail {

// Fitting split of m along an endomorphism: m = im φ^n ⊕ ker φ^n.
inline std::optional<std::pair<Summand, Summand>> fitting_split(const Morphism& phi) {
  const Module& m = phi.source();
  std::vector<Mat> im, ker;
  std::size_t imdim = 0;
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    Mat pw = power(phi.map(v), std::max<std::size_t>(m.dim(v), 1));
    im.push_back(column_basis(pw));
    ker.push_back(kernel_basis(pw));
    imdim += im.back().cols();
  }
  if (imdim == 0 || imdim == m.total_dim()) return std::nullopt;
  auto si = submodule(m, im);
  auto sk = submodule(m, ker);
  std::vector<Mat> pi, pk;
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    Mat inv = *inverse(Mat::hstack(im[v], ker[v]));
    pi.push_back(inv.block(0, 0, im[v].cols(), m.dim(v)));
    pk.push_back(inv.block(im[v].cols(), 0, ker[v].cols(), m.dim(v)));
  }
  return std::make_pair(Summand{si.module, si.inclusion, Morphism(m, si.module, pi)},
                        Summand{sk.module, sk.inclusion, Morphism(m, sk.module, pk)});
}

// Some endomorphism that is neither nilpotent nor invertible, if the search finds one.
// Sets exhausted when every endomorphism was examined.
inline std::optional<std::pair<Summand, Summand>> find_split(const Module& m, const SearchOptions& opt,
                                                             std::mt19937_64& rng, bool& exhausted) {
  exhausted = false;
  auto e = hom_space(m, m);
  if (e.dim() <= 1) {
    exhausted = true;
    return std::nullopt;
  }
  for (const auto& b : e.basis)
    if (auto s = fitting_split(b)) return s;
  for (std::size_t t = 0; t < opt.random_trials; ++t)
    if (auto s = fitting_split(e.combination(random_vector(m.field(), e.dim(), rng)))) return s;
  if (!exhaustible(m.field(), e.dim(), opt.enum_cap)) return std::nullopt;
  std::optional<std::pair<Summand, Summand>> found;
  for_each_vector(m.field(), e.dim(), [&](const std::vector<Scalar>& c) {
    found = fitting_split(e.combination(c));
    return found.has_value();
  });
  exhausted = !found;
  return found;
}

inline void decompose_into(const Summand& s, const SearchOptions& opt, std::mt19937_64& rng,
                           std::vector<Summand>& out) {
  if (s.module.is_zero()) return;
  bool exhausted = false;
  auto split = find_split(s.module, opt, rng, exhausted);
  if (!split) {
    if (!exhausted)
      throw DecompositionInconclusive("endomorphism search for a module of dimension " +
                                      std::to_string(s.module.total_dim()) + " exceeded its cap");
    out.push_back(s);
    return;
  }
  for (const Summand* part : {&split->first, &split->second})
    decompose_into(Summand{part->module, compose(s.inclusion, part->inclusion), compose(part->projection, s.projection)},
                   opt, rng, out);
}

}  // namespace detail

/// Krull-Schmidt decomposition by Fitting splits of endomorphisms.
inline Decomposition decompose(const Module& m, const SearchOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  Decomposition d;
  detail::decompose_into(Summand{m, Morphism::identity(m), Morphism::identity(m)}, opt, rng, d.summands);
  std::stable_sort(d.summands.begin(), d.summands.end(), [](const Summand& a, const Summand& b) {
    if (a.module.total_dim() != b.module.total_dim()) return a.module.total_dim() < b.module.total_dim();
    return a.module.dims() < b.module.dims();
  });
  // certify: the summand inclusions assemble to an isomorphism
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    Mat all(m.field(), m.dim(v), 0);
    for (const auto& s : d.summands) all = Mat::hstack(all, s.inclusion.map(v));
    if (!is_invertible(all) && m.dim(v) > 0) throw std::logic_error("decomposition failed to certify");
  }
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    std::size_t cls = d.iso_class.empty() ? 0 : *std::max_element(d.iso_class.begin(), d.iso_class.end()) + 1;
    for (std::size_t j = 0; j < i; ++j)
      if (is_isomorphic(d.summands[i].module, d.summands[j].module, opt).verdict == Verdict::yes) {
        cls = d.iso_class[j];
        break;
      }
    d.iso_class.push_back(cls);
  }
  return d;
}

}  // namespace halg
