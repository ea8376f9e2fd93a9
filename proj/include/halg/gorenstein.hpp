#pragma once

// Approximation presentations, left approximations by modules of bounded
// projective dimension, (quasi) k-Gorenstein checks, property (W^k), the
// Gorenstein and left-orthogonal dimensions, and the searches built on them.

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/enumerate.hpp"
#include "halg/homology.hpp"
#include "halg/modcat.hpp"

namespace halg {

struct SolveFailed : std::logic_error {
  using std::logic_error::logic_error;
};
struct MinimizationInconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

struct WorkspaceOptions {
  HomologyOptions homology;
  std::size_t dim_bound = 8;
  std::size_t max_modules = 80;
  std::uint64_t seed = 0;
};

/// Per-algebra caches shared by the searches: enumerated modules and the
/// injective dimensions of the regular modules.
class Workspace {
 public:
  Workspace(RingPtr ring, WorkspaceOptions opt = {}) : ring_(std::move(ring)), opt_(std::move(opt)) {}

  const RingPtr& ring() const { return ring_; }
  const WorkspaceOptions& options() const { return opt_; }
  const HomologyOptions& homology() const { return opt_.homology; }

  EnumerationOptions enumeration(std::size_t max_dim) const {
    EnumerationOptions e;
    e.max_dim = max_dim;
    e.max_modules = opt_.max_modules;
    e.seed = opt_.seed;
    e.search = opt_.homology.search;
    return e;
  }

  /// Harvested indecomposables of dimension <= max_dim. One harvest per side at
  /// the largest bound asked for so far; smaller bounds filter it.
  std::vector<Module> indecomposables(Side side, std::size_t max_dim) {
    auto& h = harvest_[side == Side::left ? 0 : 1];
    const std::size_t bound = std::max(max_dim, opt_.dim_bound);
    if (h.second < bound) h = {halg::indecomposables(ring_, side, enumeration(bound)), bound};
    std::vector<Module> out;
    for (const auto& m : h.first)
      if (m.total_dim() <= max_dim) out.push_back(m);
    return out;
  }

  /// Nonzero modules of dimension <= max_dim up to isomorphism (capped, smallest first).
  const std::vector<Module>& modules(Side side, std::size_t max_dim) {
    auto key = std::make_pair(side, max_dim);
    auto it = modules_.find(key);
    if (it != modules_.end()) return it->second;
    auto sums = direct_sums(indecomposables(side, max_dim), max_dim, opt_.max_modules);
    return modules_.emplace(key, std::move(sums)).first->second;
  }
  const std::vector<Module>& modules(Side side) { return modules(side, opt_.dim_bound); }

  /// id of the regular module on the given side (l.id for left, r.id for right).
  const BoundedDim& regular_injdim(Side side) {
    auto& slot = side == Side::left ? lid_ : rid_;
    if (!slot) slot = id(regular(ring_, side).module, opt_.homology);
    return *slot;
  }
  std::optional<long> regular_injdim_exact(Side side) {
    const auto& b = regular_injdim(side);
    if (b.is_exact()) return b.value();
    return std::nullopt;
  }

  /// Sums of W^t indecomposables (W^t is closed under sums and summands).
  std::vector<Module> wt_sample(Side side, std::size_t t) {
    std::vector<Module> ind;
    for (const auto& m : indecomposables(side, opt_.dim_bound)) {
      Resolver r(m, opt_.homology);
      try {
        if (wt_member(r, t)) ind.push_back(m);
      } catch (const ModuleTooLarge&) {
      }
    }
    return direct_sums(ind, opt_.dim_bound, opt_.max_modules);
  }

  /// Sums of indecomposables with pd <= k.
  std::vector<Module> pk_sample(Side side, std::size_t k) {
    std::vector<Module> ind;
    for (const auto& m : indecomposables(side, opt_.dim_bound)) {
      Resolver r(m, opt_.homology);
      try {
        if (pd_at_most(r, k)) ind.push_back(m);
      } catch (const ModuleTooLarge&) {
      }
    }
    return direct_sums(ind, opt_.dim_bound, opt_.max_modules);
  }

 private:
  RingPtr ring_;
  WorkspaceOptions opt_;
  std::pair<std::vector<Module>, std::size_t> harvest_[2];
  std::map<std::pair<Side, std::size_t>, std::vector<Module>> modules_;
  std::optional<BoundedDim> lid_, rid_;
};

// ---------------------------------------------------------------------------
// Left approximation by projectives

struct LeftApprox {
  ProjModule projective;  // ⊕ P(gens) ≅ Q* for a projective cover Q -> m*
  Morphism map;           // m -> projective
};

/// h = f* ∘ σ_m for a projective cover f: Q -> m*, written on generators:
/// the k-th component of h is the homomorphism m -> P(u_k) that f assigns to the k-th generator of Q.
inline LeftApprox left_p0_approximation(const Module& m) {
  DualModule d = dual_star(m);
  auto cover = projective_cover(d.module);
  const auto& gens = cover.projective.gens;
  auto images = generator_images(cover.projective, cover.map);
  ProjModule target = projective_sum(m.ring_ptr(), m.side(), gens);
  std::vector<Morphism> comps;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::vector<Scalar> c(images[k].rows());
    for (std::size_t r = 0; r < c.size(); ++r) c[r] = images[k](r, 0);
    comps.push_back(d.basis[gens[k]].combination(c));
  }
  std::vector<Mat> maps;
  for (VertexId w = 0; w < m.num_vertices(); ++w) {
    Mat x(m.field(), target.module.dim(w), m.dim(w));
    for (std::size_t k = 0; k < gens.size(); ++k) x.set_block(target.component_offset(w, k), 0, comps[k].map(w));
    maps.push_back(x);
  }
  return {target, Morphism(m, target.module, std::move(maps))};
}

/// Hom(h, P(v)) is surjective for every vertex v.
inline bool is_left_p0_approximation(const Morphism& h) {
  for (VertexId v = 0; v < h.source().num_vertices(); ++v)
    if (!extends_along(h, projective(h.source().ring_ptr(), h.source().side(), v))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// W^t-approximation presentations

struct ApproxCertificates {
  bool exact = false;
  bool pd_k_ok = false;       // pd K <= t-1
  bool e_in_wt = false;       // Ext^i(E, Λ) = 0 for 1 <= i <= t
  bool sampled = false;
  std::size_t sample_size = 0;
  bool all_lifts = false;     // every X -> M with X in the sample lifts to E
  bool green() const { return exact && pd_k_ok && e_in_wt && (!sampled || all_lifts); }
};

struct TraceStep {
  std::size_t level = 0;
  Module syzygy;                  // L = kernel of the projective cover of the module at this level
  std::vector<VertexId> q_gens;   // Q* = ⊕ P(q_gens)
  std::vector<Mat> delta_images;  // δ on the generators of Q*
};

struct ApproxPresentation {
  std::size_t t = 1;
  ShortExact seq;   // 0 -> K -> E -> M -> 0
  std::size_t ext_generators = 0;  // generators of Ext^1 used at the base of the recursion
  ApproxCertificates cert;
  std::vector<TraceStep> trace;
  bool diagnostic() const { return !cert.green(); }
};

inline ApproxCertificates certify(const ShortExact& s, std::size_t t, const std::vector<Module>* sample,
                                  const HomologyOptions& opt = {}) {
  ApproxCertificates c;
  c.exact = s.is_exact();
  c.pd_k_ok = s.left.is_zero() || pd_at_most(s.left, t - 1, opt);
  c.e_in_wt = wt_member(s.mid, t, opt);
  if (sample) {
    c.sampled = true;
    c.sample_size = sample->size();
    c.all_lifts = true;
    for (const auto& x : *sample)
      if (!lifts_through(x, s.surj)) {
        c.all_lifts = false;
        break;
      }
  }
  return c;
}

/// 0 -> Λ^n -> E -> m -> 0 whose class is a generating set of Ext^1(m, Λ) as a right module.
inline ApproxPresentation universal_extension(const Module& m, const HomologyOptions& opt = {}) {
  const RingPtr& ring = m.ring_ptr();
  const Algebra& a = m.algebra();
  const std::size_t nv = a.num_vertices();
  Resolver r(m, opt);
  r.require(2);
  ExtModule x = ext_module(r, 1);
  ApproxPresentation out;
  out.t = 1;
  if (x.module.is_zero()) {
    Module z = Module::zero(ring, m.side());
    out.seq = {z, m, m, Morphism::zero(z, m), Morphism::identity(m)};
    return out;
  }
  auto gcover = projective_cover(x.module);
  const auto& vs = gcover.projective.gens;
  auto classes = generator_images(gcover.projective, gcover.map);
  const ProjModule& p0 = r.term(0);
  const ProjModule& p1 = r.term(1);
  std::vector<VertexId> kgens;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (VertexId v = 0; v < nv; ++v) kgens.push_back(v);
  ProjModule lam = projective_sum(ring, m.side(), kgens);
  // cocycle representatives y_i in Hom(P_1, Λ) e_{v_i}
  std::vector<Mat> reps;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto z = solve(x.classes.map(vs[i]), classes[i]);
    if (!z) throw SolveFailed("no cocycle represents an Ext generator");
    reps.push_back(x.cocycles.inclusion.map(vs[i]) * *z);
  }
  std::vector<Mat> phi_images;
  for (std::size_t k = 0; k < p1.gens.size(); ++k) {
    const VertexId u = p1.gens[k];
    Mat img(m.field(), lam.module.dim(u), 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto len = a.paths_between(vs[i], u).size();
      const auto src = x.cochains.component_offset(vs[i], k);
      const auto dst = lam.component_offset(u, i * nv + vs[i]);
      for (std::size_t t = 0; t < len; ++t) img(dst + t, 0) = reps[i](src + t, 0);
    }
    phi_images.push_back(img);
  }
  Morphism phi = from_generator_images(p1, lam.module, phi_images);
  Morphism d1 = r.differential(1);
  Quot q = cokernel(stack_targets(d1, phi.scaled(m.field().neg(1))));
  Morphism inj = compose(q.projection, summand_inclusion(p0.module, lam.module, 1));
  Morphism aug = stack_sources(r.cover(0), Morphism::zero(lam.module, m));
  auto surj = factor_through_epi(q.projection, aug);
  if (!surj) throw SolveFailed("augmentation does not descend to the extension");
  out.seq = {lam.module, q.module, m, inj, *surj};
  out.ext_generators = vs.size();
  return out;
}

/// The map δ: Q -> target with δ ∘ h = rhs, for Q a sum of projectives.
inline Morphism solve_through(const ProjModule& q, const Morphism& h, const Morphism& rhs) {
  const Module& target = rhs.target();
  std::vector<Morphism> basis;
  std::vector<std::pair<std::size_t, std::size_t>> slot;
  for (std::size_t k = 0; k < q.gens.size(); ++k)
    for (std::size_t r = 0; r < target.dim(q.gens[k]); ++r) {
      std::vector<Mat> imgs;
      for (std::size_t j = 0; j < q.gens.size(); ++j) imgs.emplace_back(target.field(), target.dim(q.gens[j]), 1);
      imgs[k](r, 0) = 1;
      basis.push_back(from_generator_images(q, target, imgs));
      slot.emplace_back(k, r);
    }
  auto rhs_flat = rhs.flatten();
  Mat sys(target.field(), rhs_flat.size(), basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    auto col = compose(basis[b], h).flatten();
    for (std::size_t i = 0; i < col.size(); ++i) sys(i, b) = col[i];
  }
  Mat b(target.field(), rhs_flat.size(), 1);
  for (std::size_t i = 0; i < rhs_flat.size(); ++i) b(i, 0) = rhs_flat[i];
  Morphism delta = Morphism::zero(q.module, target);
  if (basis.empty()) {
    if (!rhs.is_zero()) throw SolveFailed("no map from the zero projective solves the equation");
    return delta;
  }
  auto y = solve(sys, b);
  if (!y) throw SolveFailed("no δ with δ∘h = f∘β: h is not a left approximation");
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((*y)(i, 0)) delta = delta + basis[i].scaled((*y)(i, 0));
  return delta;
}

/// The recursive construction of a W^t-approximation presentation 0 -> K -> E -> m -> 0.
/// Certificates are left unset; see certify.
inline ApproxPresentation build_wt_approx(const Module& m, std::size_t t, const HomologyOptions& opt = {}) {
  if (t == 0) throw std::invalid_argument("t must be at least 1");
  if (t == 1) return universal_extension(m, opt);
  auto cover = projective_cover(m);
  Sub l = kernel(cover.map);
  const Morphism& f = l.inclusion;
  const Morphism& g = cover.map;
  const ProjModule& p = cover.projective;
  ApproxPresentation sub = build_wt_approx(l.module, t - 1, opt);
  const Morphism& alpha = sub.seq.inj;
  const Morphism& beta = sub.seq.surj;
  LeftApprox h = left_p0_approximation(sub.seq.mid);
  Morphism delta = solve_through(h.projective, h.map, compose(f, beta));

  const Module& qs = h.projective.module;
  Morphism h0 = stack_targets(h.map, Morphism::zero(sub.seq.mid, p.module));
  Quot e = cokernel(h0);
  Morphism gamma = compose(h.map, alpha);
  Quot k = cokernel(gamma);
  Morphism into_mid = compose(e.projection, stack_targets(Morphism::identity(qs), delta.scaled(m.field().neg(1))));
  auto iota = factor_through_epi(k.projection, into_mid);
  auto pi = factor_through_epi(e.projection, compose(g, stack_sources(delta, Morphism::identity(p.module))));
  if (!iota || !pi) throw SolveFailed("induced maps on cokernels do not exist");

  ApproxPresentation out;
  out.t = t;
  out.seq = {k.module, e.module, m, *iota, *pi};
  out.ext_generators = sub.ext_generators;
  out.trace = sub.trace;
  out.trace.push_back({t, l.module, h.projective.gens, generator_images(h.projective, delta)});
  return out;
}

/// Builds and certifies a W^t-approximation presentation. With a sample of W^t
/// modules the right-approximation property is checked against it.
inline ApproxPresentation wt_approx_presentation(const Module& m, std::size_t t, const std::vector<Module>* sample,
                                                 const HomologyOptions& opt = {}) {
  ApproxPresentation p = build_wt_approx(m, t, opt);
  p.cert = certify(p.seq, t, sample, opt);
  return p;
}

inline ApproxPresentation wt_approx_presentation(const Module& m, std::size_t t, Workspace& ws) {
  auto sample = ws.wt_sample(m.side(), t);
  return wt_approx_presentation(m, t, &sample, ws.homology());
}

struct HypothesisCheck {
  std::size_t t = 0;
  BoundedDim strong_grade = BoundedDim::zero_module();  // of Ext^{t+1}(M, Λ)
  bool holds = false;                                  // strong grade >= t
};

/// s.grade Ext^{t+1}(M, Λ) >= t for 1 <= t <= k-1, one entry per t.
inline std::vector<HypothesisCheck> approx_hypothesis(const Module& m, std::size_t k, const HomologyOptions& opt = {}) {
  std::vector<HypothesisCheck> out;
  for (std::size_t t = 1; t < k; ++t) {
    HypothesisCheck h;
    h.t = t;
    h.strong_grade = strong_grade(ext_module(m, t + 1, opt), opt).value;
    h.holds = h.strong_grade.is_infinite() || h.strong_grade.value() >= static_cast<long>(t);
    out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left P^k-approximations and minimality

struct LeftPkApprox {
  std::size_t k = 1;
  ShortExact seq;  // 0 -> M -> F -> E -> 0
  bool mono = false;          // M -> F injective
  bool pd_f_ok = false;       // pd F <= k
  bool e_in_wk1 = false;      // E in W^{k+1}
  std::size_t sample_size = 0;
  bool all_extend = false;    // every M -> T with pd T <= k extends to F
  bool diagnostic() const { return !(mono && pd_f_ok && e_in_wk1 && all_extend); }
};

inline LeftPkApprox left_pk_approximation(const Module& m, std::size_t k, const std::vector<Module>* sample,
                                          const HomologyOptions& opt = {}) {
  ApproxPresentation pres = build_wt_approx(m, k, opt);
  const Module& ek = pres.seq.mid;
  LeftApprox h = left_p0_approximation(ek);
  // F = (M ⊕ P) / {(g x, -h x)}, the pushout of g: E_k -> M and h: E_k -> P
  Quot fq = cokernel(stack_targets(pres.seq.surj, h.map.scaled(m.field().neg(1))));
  Morphism from_m = compose(fq.projection, summand_inclusion(m, h.projective.module, 0));
  Quot e = cokernel(h.map);
  auto to_e = factor_through_epi(fq.projection, stack_sources(Morphism::zero(m, e.module), e.projection));
  if (!to_e) throw SolveFailed("pushout does not map onto the cokernel of h");
  LeftPkApprox out;
  out.k = k;
  out.seq = {m, fq.module, e.module, from_m, *to_e};
  out.mono = from_m.is_injective();
  out.pd_f_ok = pd_at_most(fq.module, k, opt);
  out.e_in_wk1 = wt_member(e.module, k + 1, opt);
  out.all_extend = true;
  if (sample) {
    out.sample_size = sample->size();
    for (const auto& t : *sample)
      if (!extends_along(from_m, t)) {
        out.all_extend = false;
        break;
      }
  }
  return out;
}

/// Removes superfluous summands of the target of a left approximation f: N -> K.
/// The maps u with u ∘ f = 0 form a left ideal U of End K, and f is left minimal
/// iff U is nilpotent. Otherwise some u in U is not nilpotent, f lands in
/// ker u^n, and ker u^n is a proper summand of K (Fitting).
inline Morphism minimize_left_approx(Morphism f, const SearchOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  auto nilpotent = [](const Morphism& u) {
    for (VertexId v = 0; v < u.source().num_vertices(); ++v)
      if (!power(u.map(v), std::max<std::size_t>(u.source().dim(v), 1)).is_zero()) return false;
    return true;
  };
  while (true) {
    const Module& k = f.target();
    if (k.is_zero()) return f;
    auto end = hom_space(k, k);
    auto hs = hom_space(f.source(), k);
    Mat cons(k.field(), hs.free_positions.size(), end.dim());
    for (std::size_t i = 0; i < end.dim(); ++i) {
      auto c = hs.coordinates(compose(end.basis[i], f));
      for (std::size_t r = 0; r < c.size(); ++r) cons(r, i) = c[r];
    }
    Mat ub = kernel_basis(cons);
    auto element = [&](const Mat& coords, std::size_t j) {
      std::vector<Scalar> c(end.dim());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords(i, j);
      return end.combination(c);
    };
    std::vector<Morphism> us;
    for (std::size_t j = 0; j < ub.cols(); ++j) us.push_back(element(ub, j));
    // U^m by repeated products; zero for some m iff U is nilpotent
    std::vector<Morphism> power_basis = us;
    for (std::size_t m = 0; m <= end.dim() && !power_basis.empty(); ++m) {
      Mat span(k.field(), end.dim(), 0);
      for (const auto& u : us)
        for (const auto& w : power_basis) {
          auto c = end.coordinates(compose(u, w));
          Mat col(k.field(), c.size(), 1);
          for (std::size_t r = 0; r < c.size(); ++r) col(r, 0) = c[r];
          span = Mat::hstack(span, col);
        }
      Mat basis = column_basis(span);
      if (basis.cols() == power_basis.size()) break;  // stable
      power_basis.clear();
      for (std::size_t j = 0; j < basis.cols(); ++j) power_basis.push_back(element(basis, j));
    }
    if (power_basis.empty()) return f;
    std::optional<Morphism> bad;
    for (const auto* pool : {&power_basis, &us}) {
      for (const auto& u : *pool)
        if (!bad && !nilpotent(u)) bad = u;
      for (std::size_t t = 0; !bad && t < opt.random_trials; ++t) {
        Morphism u = Morphism::zero(k, k);
        for (const auto& b : *pool)
          if (Scalar c = static_cast<Scalar>(rng() % k.field().p())) u = u + b.scaled(c);
        if (!nilpotent(u)) bad = u;
      }
    }
    if (!bad) {
      if (!detail::exhaustible(k.field(), power_basis.size(), opt.enum_cap))
        throw MinimizationInconclusive("no non-nilpotent map fixing f found within the cap");
      detail::for_each_vector(k.field(), power_basis.size(), [&](const std::vector<Scalar>& c) {
        Morphism u = Morphism::zero(k, k);
        for (std::size_t i = 0; i < c.size(); ++i)
          if (c[i]) u = u + power_basis[i].scaled(c[i]);
        if (!nilpotent(u)) bad = u;
        return bad.has_value();
      });
      if (!bad) throw MinimizationInconclusive("no non-nilpotent map fixing f found");
    }
    std::vector<Mat> ker;
    for (VertexId v = 0; v < k.num_vertices(); ++v)
      ker.push_back(kernel_basis(power(bad->map(v), std::max<std::size_t>(k.dim(v), 1))));
    Sub s = submodule(k, ker);
    auto f2 = factor_through_mono(s.inclusion, f);
    if (!f2) throw std::logic_error("approximation does not land in the Fitting kernel");
    f = *f2;
  }
}

struct MinimalLeftApprox {
  Morphism map;        // N -> K, K of pd <= k-1
  Module cokernel;     // E^{(k)}(N)
  bool e_in_wk = false;
  std::size_t sample_size = 0;
  bool ext1_vanishes = false;  // Ext^1(E, T) = 0 for sampled T with pd <= k-1
};

/// N -> K^{(k)}(N) -> E^{(k)}(N) -> 0 for a module N (on either side).
inline MinimalLeftApprox minimal_left_approximation(const Module& n, std::size_t k, Workspace& ws) {
  auto sample = ws.pk_sample(n.side(), k - 1);
  Morphism f = k == 1 ? left_p0_approximation(n).map : left_pk_approximation(n, k - 1, &sample, ws.homology()).seq.inj;
  f = minimize_left_approx(f, ws.homology().search);
  MinimalLeftApprox out{f, cokernel(f).module};
  out.e_in_wk = wt_member(out.cokernel, k, ws.homology());
  out.sample_size = sample.size();
  out.ext1_vanishes = true;
  for (const auto& t : sample)
    if (ext_dim(out.cokernel, t, 1, ws.homology()) != 0) {
      out.ext1_vanishes = false;
      break;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Quasi k-Gorenstein

struct InjectiveTermReport {
  std::size_t index = 0;
  BoundedDim pd = BoundedDim::zero_module();
  bool quasi_ok = false;  // pd I_i <= i+1
  bool gor_ok = false;    // pd I_i <= i
};

struct QuasiGorensteinReport {
  std::size_t k = 0;
  std::vector<InjectiveTermReport> terms;
  std::size_t quasi_verified = 0;  // largest j <= k with quasi_ok for all i < j
  std::size_t gorenstein_verified = 0;
  bool budget_exhausted = false;  // stopped early: later answers are undecided
  bool quasi() const { return quasi_verified == k; }
  bool gorenstein() const { return gorenstein_verified == k; }
};

/// Minimal injective resolution of Λ_Λ and the projective dimensions of its terms.
inline QuasiGorensteinReport quasi_k_gorenstein(const RingPtr& ring, std::size_t k, const HomologyOptions& opt = {}) {
  QuasiGorensteinReport rep;
  rep.k = k;
  Resolver r(k_dual(regular(ring, Side::right).module), opt);
  bool quasi = true, gor = true;
  for (std::size_t i = 0; i < k && (quasi || gor); ++i) {
    InjectiveTermReport t;
    t.index = i;
    try {
      r.require(i);
      Module ii = k_dual(r.term(i).module);
      Resolver ri(ii, opt);
      t.pd = pd(ri, std::max<std::size_t>(opt.horizon, i + 2));
      t.quasi_ok = pd_at_most(ri, i + 1);
      t.gor_ok = pd_at_most(ri, i);
    } catch (const ModuleTooLarge&) {
      rep.budget_exhausted = true;
      break;
    }
    quasi = quasi && t.quasi_ok;
    gor = gor && t.gor_ok;
    if (quasi) rep.quasi_verified = i + 1;
    if (gor) rep.gorenstein_verified = i + 1;
    rep.terms.push_back(t);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ultimately closed injective resolutions

/// Whether the minimal injective resolution of Λ_Λ is ultimately closed at n:
/// every indecomposable summand of Im δ_n is isomorphic to a summand of some Im δ_i, i < n.
inline Verdict ultimately_closed(const RingPtr& ring, std::size_t n, const HomologyOptions& opt = {}) {
  auto res = min_inj_resolution(regular(ring, Side::right).module, n - 1, opt);
  // Im δ_0 ≅ Λ_Λ, Im δ_i = res.syzygies[i-1]
  std::vector<Module> images{res.module};
  for (std::size_t i = 0; i < n; ++i) images.push_back(res.syzygies[i]);
  std::vector<Module> earlier;
  try {
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& s : decompose(images[i], opt.search).summands) earlier.push_back(s.module);
    auto last = decompose(images[n], opt.search);
    bool inconclusive = false;
    for (const auto& s : last.summands) {
      bool matched = false;
      for (const auto& e : earlier) {
        auto v = is_isomorphic(s.module, e, opt.search).verdict;
        if (v == Verdict::yes) {
          matched = true;
          break;
        }
        if (v == Verdict::inconclusive) inconclusive = true;
      }
      if (!matched) return inconclusive ? Verdict::inconclusive : Verdict::no;
    }
    return Verdict::yes;
  } catch (const DecompositionInconclusive&) {
    return Verdict::inconclusive;
  }
}

// ---------------------------------------------------------------------------
// Property (W^k)

struct PropertyResult {
  std::size_t k = 1;
  std::optional<bool> holds;    // nullopt = open
  std::string basis;            // which rung decided it
  std::optional<Module> witness;  // W^k module that is not torsionless
  std::size_t examined = 0;
  std::size_t dim_bound = 0;
};

/// Searches the enumerated left modules for a W^k module that is not torsionless.
/// k = kInfinity asks for W^∞ membership.
inline std::optional<Module> search_wk_counterexample(Workspace& ws, std::size_t k, std::size_t& examined) {
  examined = 0;
  for (const auto& m : ws.modules(Side::left)) {
    ++examined;
    Resolver r(m, ws.homology());
    bool member = false;
    try {
      member = k == kInfinity ? winf_member(r, ws.homology().horizon, ws.regular_injdim_exact(Side::left)).verdict ==
                                    Membership::yes
                              : wt_member(r, k);
    } catch (const ModuleTooLarge&) {
      continue;
    }
    if (member && !is_torsionless(m)) return m;
  }
  return std::nullopt;
}

inline PropertyResult property_wk(Workspace& ws, std::size_t k) {
  PropertyResult out;
  out.k = k;
  out.dim_bound = ws.options().dim_bound;
  const Module lr = regular(ws.ring(), Side::right).module;
  bool id_ok = false;
  if (k == kInfinity) {
    id_ok = ws.regular_injdim(Side::right).is_exact();
  } else {
    try {
      id_ok = id_at_most(lr, k, ws.homology());
    } catch (const ModuleTooLarge&) {
    }
  }
  if (id_ok) {
    out.holds = true;
    out.basis = k == kInfinity ? "r.id finite" : "r.id <= k";
    return out;
  }
  if (k == 1) {
    // id(Λ_Λ) <= 1 is equivalent to property (W^1); also look for an explicit witness.
    out.holds = false;
    out.basis = "r.id > 1";
    out.witness = search_wk_counterexample(ws, 1, out.examined);
    return out;
  }
  if (k != kInfinity && ultimately_closed(ws.ring(), k, ws.homology()) == Verdict::yes) {
    out.holds = true;
    out.basis = "ultimately closed at k";
    return out;
  }
  out.witness = search_wk_counterexample(ws, k, out.examined);
  if (out.witness) {
    out.holds = false;
    out.basis = "counterexample";
  } else {
    out.basis = "open";
  }
  return out;
}

/// Replays a claimed counterexample: W^k and not torsionless.
inline bool replay_wk_witness(const Module& m, std::size_t k, const HomologyOptions& opt = {}) {
  if (is_torsionless(m)) return false;
  if (k == kInfinity) return winf_member(m, opt).verdict == Membership::yes;
  return wt_member(m, k, opt);
}

// ---------------------------------------------------------------------------
// Gorenstein and left-orthogonal dimensions

/// G-dimension zero: reflexive, W^∞, and m* in (W^∞)^op.
inline Verdict gdim_zero(const Module& m, Workspace& ws) {
  if (m.is_zero()) return Verdict::yes;
  if (!is_reflexive(m)) return Verdict::no;
  auto a = winf_member(m, ws.homology(), ws.regular_injdim_exact(m.side()));
  if (a.verdict == Membership::no) return Verdict::no;
  auto b = winf_member(dual_star(m).module, ws.homology(), ws.regular_injdim_exact(other(m.side())));
  if (b.verdict == Membership::no) return Verdict::no;
  if (a.verdict == Membership::yes && b.verdict == Membership::yes) return Verdict::yes;
  return Verdict::inconclusive;
}

namespace detail {

// Least n with test(Ω^n m) = yes, with certified infinity from a syzygy witness.
inline BoundedDim syzygy_search(const Module& m, Workspace& ws, const std::function<Verdict(const Module&)>& test) {
  if (m.is_zero()) return BoundedDim::zero_module();
  Resolver r(m, ws.homology());
  const std::size_t h = ws.homology().horizon;
  for (std::size_t n = 0; n <= h; ++n) {
    if (n > 0 && !r.extend(n - 1)) return BoundedDim::at_least(static_cast<long>(n));
    const Module& om = r.syzygy(n);
    Verdict v = test(om);
    if (v == Verdict::yes) return BoundedDim::exact(static_cast<long>(n));
    if (v == Verdict::inconclusive) return BoundedDim::at_least(static_cast<long>(n));
    if (!r.extend(n)) return BoundedDim::at_least(static_cast<long>(n) + 1);
    if (auto w = r.witness_at(n + 1)) return BoundedDim::infinite(*w);
  }
  return BoundedDim::at_least(static_cast<long>(h) + 1);
}

}  // namespace detail

inline BoundedDim g_dim(const Module& m, Workspace& ws) {
  return detail::syzygy_search(m, ws, [&](const Module& x) { return gdim_zero(x, ws); });
}

inline BoundedDim winf_dim(const Module& m, Workspace& ws) {
  return detail::syzygy_search(m, ws, [&](const Module& x) {
    switch (winf_member(x, ws.homology(), ws.regular_injdim_exact(x.side())).verdict) {
      case Membership::yes: return Verdict::yes;
      case Membership::no: return Verdict::no;
      default: return Verdict::inconclusive;
    }
  });
}

// ---------------------------------------------------------------------------
// Relative projective dimension with respect to W^t

struct RelativeDim {
  BoundedDim value = BoundedDim::zero_module();
  bool all_green = true;  // every presentation used had exact certificates
};

/// Length of the W^t-resolution obtained by iterating approximation presentations.
inline RelativeDim rel_pd_wt(const Module& m, std::size_t t, std::size_t depth_cap, const HomologyOptions& opt = {}) {
  RelativeDim out;
  Module cur = m;
  for (std::size_t s = 0; s <= depth_cap; ++s) {
    if (wt_member(cur, t, opt)) {
      out.value = BoundedDim::exact(static_cast<long>(s));
      return out;
    }
    if (s == depth_cap) break;
    auto p = wt_approx_presentation(cur, t, nullptr, opt);
    out.all_green = out.all_green && p.cert.green();
    cur = p.seq.left;
  }
  out.value = BoundedDim::at_least(static_cast<long>(depth_cap) + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Scans

struct SncResult {
  std::optional<Module> witness;
  BoundedDim witness_grade = BoundedDim::zero_module();
  std::size_t examined = 0;
};

/// A nonzero module with Ext^i(M, Λ) = 0 for all i >= 0, certified by periodicity.
inline SncResult snc_search(Workspace& ws) {
  SncResult out;
  for (const auto& m : ws.modules(Side::left)) {
    ++out.examined;
    Resolver r(m, ws.homology());
    auto g = grade(r, ws.homology().horizon);
    if (g.is_infinite() && !g.zero_module_flag()) {
      out.witness = m;
      out.witness_grade = g;
      return out;
    }
  }
  return out;
}

struct FindimScan {
  std::optional<long> max_finite_pd;
  std::size_t examined = 0;
  std::size_t finite = 0;
  std::size_t undetermined = 0;
};

inline FindimScan findim_scan(Workspace& ws, Side side, std::size_t max_dim) {
  FindimScan out;
  for (const auto& m : ws.modules(side, max_dim)) {
    ++out.examined;
    auto d = pd(m, ws.homology());
    if (d.is_exact()) {
      ++out.finite;
      out.max_finite_pd = out.max_finite_pd ? std::max(*out.max_finite_pd, d.value()) : d.value();
    } else if (d.is_at_least()) {
      ++out.undetermined;
    }
  }
  return out;
}

}  // namespace halg
