#pragma once

// Deterministic enumeration of small modules up to isomorphism: indecomposables
// are harvested from random presentations (and duals of random presentations on
// the opposite side), then combined into direct sums.

#include <algorithm>
#include <random>
#include <vector>

#include "halg/modcat.hpp"

namespace halg {

struct EnumerationOptions {
  std::size_t max_dim = 6;
  std::size_t max_modules = 80;        // cap on returned direct sums
  std::size_t random_presentations = 300;
  std::uint64_t seed = 0;
  SearchOptions search;
};

namespace detail {

inline Module random_cokernel(const RingPtr& ring, Side side, std::size_t max_dim, std::mt19937_64& rng) {
  const Algebra& a = ring->side(side);
  const std::size_t nv = a.num_vertices();
  std::vector<VertexId> g0, g1;
  std::size_t d0 = 0;
  const std::size_t n0 = 1 + rng() % 3;
  for (std::size_t i = 0; i < n0; ++i) {
    VertexId v = rng() % nv;
    std::size_t dv = 0;
    for (VertexId w = 0; w < nv; ++w) dv += a.paths_between(v, w).size();
    if (d0 + dv > max_dim + 3 && !g0.empty()) break;
    g0.push_back(v);
    d0 += dv;
  }
  const std::size_t n1 = rng() % 4;
  for (std::size_t i = 0; i < n1; ++i) g1.push_back(rng() % nv);
  auto p0 = projective_sum(ring, side, g0);
  auto p1 = projective_sum(ring, side, g1);
  std::vector<Mat> images;
  for (auto v : g1) {
    Mat img(a.field(), p0.module.dim(v), 1);
    for (std::size_t r = 0; r < img.rows(); ++r) img(r, 0) = static_cast<Scalar>(rng() % a.field().p());
    images.push_back(img);
  }
  return cokernel(from_generator_images(p1, p0.module, images)).module;
}

inline bool known(const std::vector<Module>& list, const Module& m, const SearchOptions& opt) {
  for (const auto& x : list)
    if (x.dims() == m.dims() && is_isomorphic(x, m, opt).verdict == Verdict::yes) return true;
  return false;
}

}  // namespace detail

/// Indecomposable modules of dimension <= max_dim found by the harvest, one per iso class.
inline std::vector<Module> indecomposables(const RingPtr& ring, Side side, const EnumerationOptions& opt) {
  std::vector<Module> found;
  auto offer = [&](const Module& m) {
    if (m.is_zero()) return;
    Decomposition d;
    try {
      d = decompose(m, opt.search);
    } catch (const DecompositionInconclusive&) {
      return;
    }
    for (const auto& s : d.summands)
      if (s.module.total_dim() <= opt.max_dim && !detail::known(found, s.module, opt.search)) found.push_back(s.module);
  };
  for (VertexId v = 0; v < ring->num_vertices(); ++v) {
    offer(simple(ring, side, v));
    offer(projective(ring, side, v));
    offer(injective(ring, side, v));
  }
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_presentations; ++i) {
    offer(detail::random_cokernel(ring, side, opt.max_dim, rng));
    offer(k_dual(detail::random_cokernel(ring, other(side), opt.max_dim, rng)));
  }
  std::stable_sort(found.begin(), found.end(), [](const Module& a, const Module& b) {
    if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
    return a.dims() < b.dims();
  });
  return found;
}

/// Nonzero direct sums of the given modules with total dimension <= max_dim,
/// smallest first, at most max_count of them.
inline std::vector<Module> direct_sums(const std::vector<Module>& ind, std::size_t max_dim, std::size_t max_count) {
  std::vector<std::vector<std::size_t>> sums;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start, std::size_t dim) -> void {
    if (!cur.empty()) sums.push_back(cur);
    for (std::size_t i = start; i < ind.size(); ++i) {
      if (ind[i].is_zero() || dim + ind[i].total_dim() > max_dim) continue;
      cur.push_back(i);
      self(self, i, dim + ind[i].total_dim());
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  auto dim_of = [&](const std::vector<std::size_t>& s) {
    std::size_t d = 0;
    for (auto i : s) d += ind[i].total_dim();
    return d;
  };
  std::stable_sort(sums.begin(), sums.end(), [&](const auto& a, const auto& b) {
    const auto da = dim_of(a), db = dim_of(b);
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  if (sums.size() > max_count) sums.resize(max_count);
  std::vector<Module> out;
  for (const auto& s : sums) {
    Module m = ind[s.front()];
    for (std::size_t i = 1; i < s.size(); ++i) m = direct_sum(m, ind[s[i]]);
    out.push_back(m);
  }
  return out;
}

inline std::vector<Module> enumerate_modules(const RingPtr& ring, Side side, const EnumerationOptions& opt) {
  return direct_sums(indecomposables(ring, side, opt), opt.max_dim, opt.max_modules);
}

}  // namespace halg
