#pragma once

// Minimal resolutions, Ext groups, syzygies and the bounded homological
// dimensions built from them.

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/modcat.hpp"

namespace halg {

struct ModuleTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HomologyOptions {
  std::size_t horizon = 24;
  std::size_t max_syzygy_dim = 256;   // resolutions stop growing past this total dimension
  std::size_t witness_dim = 48;       // largest syzygy compared for periodicity
  std::uint64_t submodule_cap = 1u << 12;
  SearchOptions search;
};

/// Ω^to ≅ (Ω^from)^multiplicity with Ω^from nonzero. Multiplicity 1 is plain periodicity.
struct PeriodicityWitness {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t multiplicity = 1;
  friend bool operator==(const PeriodicityWitness&, const PeriodicityWitness&) = default;
};

/// A horizon-limited dimension: Exact(n), AtLeast(n) or certified infinite.
class BoundedDim {
 public:
  enum class Tag { exact, at_least, infinite };

  static BoundedDim exact(long n) { return BoundedDim(Tag::exact, n); }
  static BoundedDim at_least(long n) { return BoundedDim(Tag::at_least, n); }
  static BoundedDim infinite(PeriodicityWitness w) {
    BoundedDim b(Tag::infinite, 0);
    b.witness_ = w;
    return b;
  }
  /// Infinite for the zero module (grade of 0).
  static BoundedDim infinite_zero() {
    BoundedDim b(Tag::infinite, 0);
    b.zero_ = true;
    return b;
  }
  /// Dimension of the zero module (the -∞ sentinel).
  static BoundedDim zero_module() {
    BoundedDim b(Tag::exact, -1);
    b.zero_ = true;
    return b;
  }

  Tag tag() const { return tag_; }
  long value() const { return value_; }
  bool is_exact() const { return tag_ == Tag::exact; }
  bool is_at_least() const { return tag_ == Tag::at_least; }
  bool is_infinite() const { return tag_ == Tag::infinite; }
  bool zero_module_flag() const { return zero_; }
  const std::optional<PeriodicityWitness>& witness() const { return witness_; }

  /// Certainly ≤ n.
  bool certainly_at_most(long n) const { return tag_ == Tag::exact && value_ <= n; }

  std::string str() const {
    switch (tag_) {
      case Tag::exact:
        return zero_ ? "zero module" : std::to_string(value_);
      case Tag::at_least:
        return ">=" + std::to_string(value_);
      default:
        if (zero_) return "infinite (zero module)";
        return "infinite (Omega^" + std::to_string(witness_->to) + " = (Omega^" + std::to_string(witness_->from) +
               ")^" + std::to_string(witness_->multiplicity) + ")";
    }
  }

  friend bool operator==(const BoundedDim& a, const BoundedDim& b) {
    if (a.tag_ != b.tag_ || a.zero_ != b.zero_) return false;
    if (a.tag_ == Tag::infinite) return true;
    return a.value_ == b.value_;
  }

 private:
  BoundedDim(Tag t, long v) : tag_(t), value_(v) {}
  Tag tag_;
  long value_;
  bool zero_ = false;
  std::optional<PeriodicityWitness> witness_;
};

namespace detail {

inline bool is_semisimple(const Module& m) {
  for (const auto& x : m.maps())
    if (!x.is_zero()) return false;
  return true;
}

// Isomorphism test with a fast path for semisimple modules.
inline Verdict quick_iso(const Module& a, const Module& b, const SearchOptions& opt) {
  if (a.dims() != b.dims()) return Verdict::no;
  const bool sa = is_semisimple(a), sb = is_semisimple(b);
  if (sa || sb) return sa && sb ? Verdict::yes : Verdict::no;
  return is_isomorphic(a, b, opt).verdict;
}

}  // namespace detail

/// A lazily extended minimal projective resolution. Also the memo handle for
/// syzygies, Ext dimensions and periodicity witnesses of one module.
class Resolver {
 public:
  explicit Resolver(Module m, HomologyOptions opt = {}) : opt_(std::move(opt)) {
    syz_.push_back(std::move(m));
    incl_.push_back(Morphism());
  }

  const Module& module() const { return syz_.front(); }
  const HomologyOptions& options() const { return opt_; }

  /// Computes P_0..P_n and Ω^0..Ω^{n+1}. False if a syzygy exceeded the size budget.
  bool extend(std::size_t n) {
    while (proj_.size() <= n) {
      const Module& om = syz_.back();
      if (om.total_dim() > opt_.max_syzygy_dim) return false;
      auto cover = projective_cover(om);
      auto k = kernel(cover.map);
      proj_.push_back(cover.projective);
      cover_.push_back(cover.map);
      syz_.push_back(k.module);
      incl_.push_back(k.inclusion);
    }
    return true;
  }
  void require(std::size_t n) {
    if (!extend(n))
      throw ModuleTooLarge("syzygy of dimension " + std::to_string(syz_.back().total_dim()) + " exceeds budget " +
                           std::to_string(opt_.max_syzygy_dim));
  }

  std::size_t computed() const { return proj_.size(); }
  const ProjModule& term(std::size_t i) { require(i); return proj_[i]; }
  const Morphism& cover(std::size_t i) { require(i); return cover_[i]; }
  const Module& syzygy(std::size_t i) {
    if (i > 0) require(i - 1);
    return syz_[i];
  }
  /// Ω^i -> P_{i-1}, i >= 1.
  const Morphism& inclusion(std::size_t i) { require(i - 1); return incl_[i]; }
  /// d_i : P_i -> P_{i-1}, i >= 1.
  Morphism differential(std::size_t i) { return compose(inclusion(i), cover(i)); }

  /// Least n with Ω^{n+1} = 0 among computed syzygies.
  std::optional<std::size_t> terminated() const {
    for (std::size_t i = 0; i < syz_.size(); ++i)
      if (syz_[i].is_zero()) return i == 0 ? std::optional<std::size_t>{} : std::optional<std::size_t>{i - 1};
    return std::nullopt;
  }

  /// A witness Ω^j ≅ (Ω^i)^r with i < j, if j is computed and one is found.
  std::optional<PeriodicityWitness> witness_at(std::size_t j) {
    auto it = witness_cache_.find(j);
    if (it != witness_cache_.end()) return it->second;
    std::optional<PeriodicityWitness> w;
    if (j < syz_.size() && !syz_[j].is_zero() && syz_[j].total_dim() <= opt_.witness_dim) {
      for (std::size_t i = 0; i < j && !w; ++i) {
        const Module& a = syz_[i];
        const Module& b = syz_[j];
        if (a.is_zero() || b.total_dim() % a.total_dim() != 0) continue;
        const std::size_t r = b.total_dim() / a.total_dim();
        bool divisible = true;
        for (VertexId v = 0; v < a.num_vertices(); ++v) divisible = divisible && b.dim(v) == r * a.dim(v);
        if (!divisible) continue;
        if (detail::quick_iso(b, power(a, r), opt_.search) == Verdict::yes) w = PeriodicityWitness{i, j, r};
      }
    }
    witness_cache_[j] = w;
    return w;
  }

  /// Matrix of Hom(d_{i+1}, n): Hom(P_i, n) -> Hom(P_{i+1}, n), with Hom(P(u), n) = n_u.
  Mat hom_differential(std::size_t i, const Module& n, const std::vector<Mat>& table) {
    const ProjModule& pi = term(i);
    const ProjModule& pn = term(i + 1);
    const Algebra& a = n.algebra();
    std::vector<std::size_t> col_off(pi.gens.size() + 1, 0), row_off(pn.gens.size() + 1, 0);
    for (std::size_t k = 0; k < pi.gens.size(); ++k) col_off[k + 1] = col_off[k] + n.dim(pi.gens[k]);
    for (std::size_t j = 0; j < pn.gens.size(); ++j) row_off[j + 1] = row_off[j] + n.dim(pn.gens[j]);
    Mat out(n.field(), row_off.back(), col_off.back());
    if (pn.gens.empty() || pi.gens.empty()) return out;
    auto dg = generator_images(pn, differential(i + 1));
    for (std::size_t j = 0; j < pn.gens.size(); ++j) {
      const VertexId v = pn.gens[j];
      for (std::size_t k = 0; k < pi.gens.size(); ++k) {
        const auto& paths = a.paths_between(pi.gens[k], v);
        const std::size_t base = pi.component_offset(v, k);
        Mat block(n.field(), n.dim(v), n.dim(pi.gens[k]));
        for (std::size_t t = 0; t < paths.size(); ++t)
          if (Scalar c = dg[j](base + t, 0)) block.axpy(c, table[paths[t]]);
        out.set_block(row_off[j], col_off[k], block);
      }
    }
    return out;
  }

  /// dim Hom(P_i, n).
  std::size_t cochain_dim(std::size_t i, const Module& n) {
    std::size_t d = 0;
    for (auto u : term(i).gens) d += n.dim(u);
    return d;
  }

  /// dim Ext^i(module, Λ), memoized.
  std::size_t ext_regular(std::size_t i) {
    if (ext_cache_.size() <= i) {
      if (!regular_) regular_ = regular(module().ring_ptr(), module().side()).module;
      if (table_.empty()) table_ = regular_->action_table();
      while (ext_cache_.size() <= i) {
        const std::size_t s = ext_cache_.size();
        const std::size_t r_out = rank(hom_differential(s, *regular_, table_));
        const std::size_t r_in = s == 0 ? 0 : rank_cache_[s - 1];
        rank_cache_.push_back(r_out);
        ext_cache_.push_back(cochain_dim(s, *regular_) - r_out - r_in);
      }
    }
    return ext_cache_[i];
  }

 private:
  HomologyOptions opt_;
  std::deque<ProjModule> proj_;
  std::deque<Morphism> cover_;
  std::deque<Module> syz_;
  std::deque<Morphism> incl_;
  std::map<std::size_t, std::optional<PeriodicityWitness>> witness_cache_;
  std::optional<Module> regular_;
  std::vector<Mat> table_;
  std::vector<std::size_t> rank_cache_;
  std::vector<std::size_t> ext_cache_;
};

// ---------------------------------------------------------------------------
// Resolution prefixes

struct ResolutionPrefix {
  enum class Kind { projective, injective };
  Kind kind = Kind::projective;
  Module module;
  std::vector<Module> terms;                    // P_0..P_n or I_0..I_n
  std::vector<std::vector<VertexId>> vertices;  // indecomposable summands of each term
  std::vector<Morphism> differentials;          // projective: d_i: P_i -> P_{i-1}; injective: δ_i: I_{i-1} -> I_i
  Morphism augmentation;                        // P_0 -> M, or M -> I_0
  std::vector<Module> syzygies;                 // projective: Ω^1..Ω^{n+1}; injective: Im δ_1..Im δ_{n+1}
  std::vector<Morphism> syzygy_maps;            // Ω^i -> P_{i-1}, or I_{i-1} -> Im δ_i
  bool minimal = true;

  /// Composites vanish and the complex is exact at every computed spot.
  bool is_exact() const {
    if (terms.empty()) return true;
    if (kind == Kind::projective) {
      if (!augmentation.is_surjective()) return false;
      for (std::size_t i = 0; i < differentials.size(); ++i) {
        const Morphism& d = differentials[i];
        const Morphism& prev = i == 0 ? augmentation : differentials[i - 1];
        if (!compose(prev, d).is_zero()) return false;
        if (d.rank() + prev.rank() != d.target().total_dim()) return false;
      }
    } else {
      if (!augmentation.is_injective()) return false;
      for (std::size_t i = 0; i < differentials.size(); ++i) {
        const Morphism& d = differentials[i];
        const Morphism& prev = i == 0 ? augmentation : differentials[i - 1];
        if (!compose(d, prev).is_zero()) return false;
        if (d.rank() + prev.rank() != d.source().total_dim()) return false;
      }
    }
    return true;
  }

  /// Projective: every differential lands in the radical. Injective: the socle of
  /// every term lies in the image of the incoming map.
  bool check_minimal() const {
    for (std::size_t i = 0; i < differentials.size(); ++i) {
      const Morphism& d = differentials[i];
      if (kind == Kind::projective) {
        auto rad = radical(d.target());
        for (VertexId v = 0; v < d.maps().size(); ++v)
          if (rank(Mat::hstack(rad.inclusion.map(v), d.map(v))) != rad.inclusion.map(v).cols()) return false;
      }
    }
    if (kind == Kind::injective) {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const Morphism& into = i == 0 ? augmentation : differentials[i - 1];
        auto soc = socle(terms[i]);
        for (VertexId v = 0; v < terms[i].num_vertices(); ++v)
          if (rank(Mat::hstack(into.map(v), soc.inclusion.map(v))) != rank(into.map(v))) return false;
      }
    }
    return true;
  }
};

inline ResolutionPrefix min_proj_resolution(Resolver& r, std::size_t n) {
  r.require(n);
  ResolutionPrefix p;
  p.kind = ResolutionPrefix::Kind::projective;
  p.module = r.module();
  for (std::size_t i = 0; i <= n; ++i) {
    p.terms.push_back(r.term(i).module);
    p.vertices.push_back(r.term(i).gens);
    if (i > 0) p.differentials.push_back(r.differential(i));
    p.syzygies.push_back(r.syzygy(i + 1));
    p.syzygy_maps.push_back(r.inclusion(i + 1));
  }
  p.augmentation = r.cover(0);
  p.minimal = true;
  return p;
}

inline ResolutionPrefix min_proj_resolution(const Module& m, std::size_t n, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return min_proj_resolution(r, n);
}

/// Minimal injective resolution, obtained by dualizing the minimal projective
/// resolution of D(m) on the opposite side.
inline ResolutionPrefix min_inj_resolution(const Module& m, std::size_t n, const HomologyOptions& opt = {}) {
  Resolver r(k_dual(m), opt);
  r.require(n);
  ResolutionPrefix p;
  p.kind = ResolutionPrefix::Kind::injective;
  p.module = m;
  for (std::size_t i = 0; i <= n; ++i) {
    p.terms.push_back(k_dual(r.term(i).module));
    p.vertices.push_back(r.term(i).gens);
    if (i > 0) p.differentials.push_back(k_dual(r.differential(i)));
    // Im δ_{i+1} ≅ D(Ω^{i+1} Dm), reached from I_i by D of Ω^{i+1} -> P_i
    p.syzygies.push_back(k_dual(r.syzygy(i + 1)));
    p.syzygy_maps.push_back(k_dual(r.inclusion(i + 1)));
  }
  p.augmentation = k_dual(r.cover(0));
  p.minimal = true;
  return p;
}

// ---------------------------------------------------------------------------
// Ext

inline std::vector<std::size_t> ext_dims(const Module& m, const Module& n, std::size_t upto,
                                         const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  r.require(upto + 1);
  auto table = n.action_table();
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i <= upto; ++i) ranks.push_back(rank(r.hom_differential(i, n, table)));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= upto; ++i) out.push_back(r.cochain_dim(i, n) - ranks[i] - (i ? ranks[i - 1] : 0));
  return out;
}

inline std::size_t ext_dim(const Module& m, const Module& n, std::size_t i, const HomologyOptions& opt = {}) {
  return ext_dims(m, n, i, opt).back();
}

/// Ext^i(m, Λ) as a module on the opposite side, with the cochains it is a subquotient of.
struct ExtModule {
  Module module;
  ProjModule cochains;  // Hom(P_i, Λ) = P_i*
  Sub cocycles;         // ker(P_i* -> P_{i+1}*)
  Morphism classes;     // cocycles -> Ext
};

inline ExtModule ext_module(Resolver& r, std::size_t i) {
  auto dual_d = [&](std::size_t j) {  // d_j*: P_{j-1}* -> P_j*
    return dual_projective_map(r.term(j), r.term(j - 1), r.differential(j));
  };
  ProjModule ci = dual_projective(r.term(i));
  Morphism out = dual_d(i + 1);
  Sub z = kernel(out);
  Morphism in = i == 0 ? Morphism::zero(Module::zero(ci.module.ring_ptr(), ci.module.side()), ci.module) : dual_d(i);
  auto lifted = factor_through_mono(z.inclusion, in);
  if (!lifted) throw std::logic_error("ext_module: dualized resolution is not a complex");
  Quot q = cokernel(*lifted);
  return {q.module, ci, z, q.projection};
}

inline Module ext_module(const Module& m, std::size_t i, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return ext_module(r, i).module;
}

// ---------------------------------------------------------------------------
// Projective and injective dimension

/// Exact decision pd m <= n. Periodicity witnesses decide large n early.
inline bool pd_at_most(Resolver& r, std::size_t n) {
  if (r.module().is_zero()) return true;
  for (std::size_t i = 0; i <= n; ++i) {
    r.require(i);
    if (r.syzygy(i + 1).is_zero()) return true;
    if (r.witness_at(i + 1)) return false;
  }
  return false;
}

inline bool pd_at_most(const Module& m, std::size_t n, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return pd_at_most(r, n);
}

inline bool id_at_most(const Module& m, std::size_t n, const HomologyOptions& opt = {}) {
  return pd_at_most(k_dual(m), n, opt);
}

inline BoundedDim pd(Resolver& r, std::size_t horizon) {
  if (r.module().is_zero()) return BoundedDim::zero_module();
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (!r.extend(n)) return BoundedDim::at_least(static_cast<long>(n));
    if (r.syzygy(n + 1).is_zero()) return BoundedDim::exact(static_cast<long>(n));
    if (auto w = r.witness_at(n + 1)) return BoundedDim::infinite(*w);
  }
  return BoundedDim::at_least(static_cast<long>(horizon));
}

inline BoundedDim pd(const Module& m, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return pd(r, opt.horizon);
}

inline BoundedDim id(const Module& m, const HomologyOptions& opt = {}) { return pd(k_dual(m), opt); }

// ---------------------------------------------------------------------------
// Grade and W^t membership

namespace detail {

// A computed witness Ω^j ≅ (Ω^i)^r with j <= upto. If Ext^1..Ext^upto(m, Λ)
// vanish, such a witness makes Ext^s vanish for every s >= 1.
inline std::optional<PeriodicityWitness> witness_within(Resolver& r, std::size_t upto) {
  for (std::size_t j = 1; j <= upto && j <= r.computed(); ++j)
    if (auto w = r.witness_at(j)) return w;
  return std::nullopt;
}

}  // namespace detail

inline BoundedDim grade(Resolver& r, std::size_t horizon) {
  if (r.module().is_zero()) return BoundedDim::infinite_zero();
  for (std::size_t j = 0; j <= horizon; ++j) {
    if (auto w = detail::witness_within(r, j == 0 ? 0 : j - 1)) return BoundedDim::infinite(*w);
    if (!r.extend(j + 1)) return BoundedDim::at_least(static_cast<long>(j));
    if (r.ext_regular(j) != 0) return BoundedDim::exact(static_cast<long>(j));
  }
  return BoundedDim::at_least(static_cast<long>(horizon) + 1);
}

inline BoundedDim grade(const Module& m, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return grade(r, opt.horizon);
}

/// All submodules, as inclusions, sorted by dimension.
inline std::vector<Sub> submodules(const Module& m, std::uint64_t cap = 1u << 12) {
  if (!detail::exhaustible(m.field(), m.total_dim(), cap))
    throw ModuleTooLarge("submodule enumeration needs p^" + std::to_string(m.total_dim()) + " > cap " +
                         std::to_string(cap));
  using Key = std::vector<std::vector<Scalar>>;
  auto key_of = [&](const std::vector<Mat>& sp) {
    Key k;
    for (const auto& s : sp) k.push_back(subspace_key(s));
    return k;
  };
  std::map<Key, std::vector<Mat>> found;
  detail::for_each_vector(m.field(), m.total_dim(), [&](const std::vector<Scalar>& c) {
    Mat x(m.field(), m.total_dim(), 1);
    for (std::size_t i = 0; i < c.size(); ++i) x(i, 0) = c[i];
    auto sp = cyclic_span(m, x);
    found.emplace(key_of(sp), sp);
    return false;
  });
  std::vector<std::vector<Mat>> cyclic;
  for (auto& [k, sp] : found) cyclic.push_back(sp);
  // close under sums
  std::vector<std::vector<Mat>> work;
  for (auto& [k, sp] : found) work.push_back(sp);
  while (!work.empty()) {
    auto cur = std::move(work.back());
    work.pop_back();
    for (const auto& c : cyclic) {
      std::vector<Mat> sum;
      for (VertexId v = 0; v < m.num_vertices(); ++v) sum.push_back(column_basis(Mat::hstack(cur[v], c[v])));
      auto k = key_of(sum);
      if (found.emplace(k, sum).second) work.push_back(sum);
      if (found.size() > cap) throw ModuleTooLarge("more than " + std::to_string(cap) + " submodules");
    }
  }
  std::vector<std::pair<std::size_t, Key>> order;
  for (auto& [k, sp] : found) {
    std::size_t d = 0;
    for (const auto& s : sp) d += s.cols();
    order.emplace_back(d, k);
  }
  std::sort(order.begin(), order.end());
  std::vector<Sub> out;
  for (auto& [d, k] : order) out.push_back(submodule(m, found.at(k)));
  return out;
}

struct StrongGrade {
  BoundedDim value;
  std::size_t submodules_examined = 0;
};

/// min over submodules X of grade(X), by enumerating the submodule lattice. The
/// minimum is exact when some grade is Exact and no AtLeast bound lies below it.
inline StrongGrade strong_grade_by_enumeration(const Module& m, const HomologyOptions& opt = {}) {
  if (m.is_zero()) return {BoundedDim::infinite_zero(), 1};
  auto subs = submodules(m, opt.submodule_cap);
  std::optional<long> best_exact;
  std::optional<long> best_bound;
  std::optional<BoundedDim> some_infinite;
  for (const auto& s : subs) {
    if (s.module.is_zero()) continue;
    auto g = grade(s.module, opt);
    if (g.is_exact()) best_exact = best_exact ? std::min(*best_exact, g.value()) : g.value();
    else if (g.is_at_least()) best_bound = best_bound ? std::min(*best_bound, g.value()) : g.value();
    else if (!some_infinite) some_infinite = g;
  }
  if (best_exact && (!best_bound || *best_exact <= *best_bound)) return {BoundedDim::exact(*best_exact), subs.size()};
  if (best_bound) return {BoundedDim::at_least(*best_bound), subs.size()};
  return {*some_infinite, subs.size()};
}

/// Strong grade. Grade is at least the minimum over an extension's ends, so the
/// minimum grade of the composition factors bounds every submodule from below,
/// while simple submodules bound the strong grade from above. When the two
/// bounds meet no enumeration is needed.
inline StrongGrade strong_grade(const Module& m, const HomologyOptions& opt = {}) {
  if (m.is_zero()) return {BoundedDim::infinite_zero(), 1};
  std::optional<long> lower, upper;
  bool exact = true;
  auto soc = socle(m).module;
  for (VertexId v = 0; v < m.num_vertices() && exact; ++v) {
    if (m.dim(v) == 0) continue;
    auto g = grade(simple(m.ring_ptr(), m.side(), v), opt);
    if (!g.is_exact()) {
      exact = false;
      break;
    }
    lower = lower ? std::min(*lower, g.value()) : g.value();
    if (soc.dim(v)) upper = upper ? std::min(*upper, g.value()) : g.value();
  }
  if (exact && lower && upper && *lower == *upper) return {BoundedDim::exact(*lower), 0};
  return strong_grade_by_enumeration(m, opt);
}

/// Ext^i(m, Λ) = 0 for 1 <= i <= t.
inline bool wt_member(Resolver& r, std::size_t t) {
  if (r.module().is_zero()) return true;
  for (std::size_t i = 1; i <= t; ++i) {
    if (auto end = r.terminated(); end && *end < i) return true;
    if (detail::witness_within(r, i - 1)) return true;
    r.require(i + 1);
    if (r.ext_regular(i) != 0) return false;
  }
  return true;
}

inline bool wt_member(const Module& m, std::size_t t, const HomologyOptions& opt = {}) {
  Resolver r(m, opt);
  return wt_member(r, t);
}

enum class Membership { yes, no, up_to_horizon };

inline const char* membership_name(Membership m) {
  switch (m) {
    case Membership::yes: return "yes";
    case Membership::no: return "no";
    default: return "up_to_horizon";
  }
}

struct WinfResult {
  Membership verdict = Membership::up_to_horizon;
  std::size_t checked = 0;     // Ext^1..Ext^checked computed
  std::string certificate;     // how a yes was obtained, or which Ext was nonzero
  std::optional<PeriodicityWitness> witness;
};

/// Ext^i(m, Λ) = 0 for all i >= 1. `regular_injdim` is id of Λ on the module's
/// side, when already known exactly.
inline WinfResult winf_member(Resolver& r, std::size_t horizon, std::optional<long> regular_injdim = std::nullopt) {
  WinfResult out;
  if (r.module().is_zero()) {
    out.verdict = Membership::yes;
    out.certificate = "zero module";
    return out;
  }
  for (std::size_t i = 1; i <= horizon + 1; ++i) {
    // Ext^1..Ext^{i-1} vanish here
    if (auto end = r.terminated(); end && *end < i) {
      out.verdict = Membership::yes;
      out.certificate = "pd = " + std::to_string(*end);
      return out;
    }
    if (regular_injdim && static_cast<long>(i) > *regular_injdim) {
      out.verdict = Membership::yes;
      out.certificate = "Ext vanishes through id(Lambda) = " + std::to_string(*regular_injdim);
      return out;
    }
    if (auto w = detail::witness_within(r, i - 1)) {
      out.verdict = Membership::yes;
      out.witness = w;
      out.certificate = "periodic: Omega^" + std::to_string(w->to) + " = (Omega^" + std::to_string(w->from) + ")^" +
                        std::to_string(w->multiplicity);
      return out;
    }
    if (i > horizon) break;
    if (!r.extend(i + 1)) {
      out.certificate = "resolution exceeded size budget";
      return out;
    }
    if (r.ext_regular(i) != 0) {
      out.verdict = Membership::no;
      out.checked = i;
      out.certificate = "Ext^" + std::to_string(i) + " != 0";
      return out;
    }
    out.checked = i;
  }
  out.certificate = "Ext vanishes up to the horizon";
  return out;
}

inline WinfResult winf_member(const Module& m, const HomologyOptions& opt = {},
                              std::optional<long> regular_injdim = std::nullopt) {
  Resolver r(m, opt);
  return winf_member(r, opt.horizon, regular_injdim);
}

/// Ext^i(Tr m, Λ) = 0 for 1 <= i <= k.
inline bool k_torsionfree(const Module& m, std::size_t k, const HomologyOptions& opt = {}) {
  return wt_member(transpose(m), k, opt);
}

/// Dimension bookkeeping for 0 -> Ext^1(Tr A,Λ) -> A -> A** -> Ext^2(Tr A,Λ) -> 0.
struct TransposeSequence {
  std::size_t dim_a = 0, dim_double_dual = 0, ext1 = 0, ext2 = 0;
  std::size_t ker_sigma = 0, coker_sigma = 0;

  bool dimension_identity() const { return dim_a + ext2 == dim_double_dual + ext1; }
  // Exactness at each spot, given that ker σ and coker σ are the outer terms.
  bool exact() const { return ker_sigma == ext1 && coker_sigma == ext2; }
};

inline TransposeSequence transpose_sequence(const Module& a, const HomologyOptions& opt = {}) {
  TransposeSequence out;
  auto ev = evaluation(a);
  out.dim_a = a.total_dim();
  out.dim_double_dual = ev.sigma.target().total_dim();
  const std::size_t rk = ev.sigma.rank();
  out.ker_sigma = out.dim_a - rk;
  out.coker_sigma = out.dim_double_dual - rk;
  Resolver r(transpose(a), opt);
  r.require(3);
  out.ext1 = r.ext_regular(1);
  out.ext2 = r.ext_regular(2);
  return out;
}

}  // namespace halg
