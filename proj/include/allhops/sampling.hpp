#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/random.hpp"

namespace allhops {

/// Parameters of a hitting-set sample: oversampling constant C, RNG seed, and
/// vertices that must belong to every sampled level.
struct SamplePlan {
  double C = 4.0;
  std::uint64_t seed = 0;
  std::vector<Vertex> pinned;

  void validate(std::size_t n) const {
    if (!(C >= 1.0)) throw InputError("sample plan: C must be >= 1");
    for (auto v : pinned)
      if (v >= n) throw InputError("sample plan: pinned vertex out of range");
  }

  SamplePlan with_pinned(std::vector<Vertex> p) const {
    SamplePlan out = *this;
    out.pinned = std::move(p);
    return out;
  }

  SamplePlan with_seed(std::uint64_t s) const {
    SamplePlan out = *this;
    out.seed = s;
    return out;
  }
};

/// ceil(n^(num/den)), tolerant of floating error at exact powers.
inline std::size_t ceil_root_power(std::size_t n, std::size_t num, std::size_t den) {
  if (n <= 1 || num == 0) return 1;
  const double v = std::pow(static_cast<double>(n), static_cast<double>(num) / static_cast<double>(den));
  return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

/// ceil((3/2)^k).
inline std::size_t ceil_three_halves_pow(std::size_t k) {
  return static_cast<std::size_t>(std::ceil(std::pow(1.5, static_cast<double>(k)) - 1e-9));
}

/// min(n, ceil(C * scale * ln n)), the hitting-set sample size for sets of
/// n / scale elements.
inline std::size_t hitting_set_size(std::size_t n, double C, double scale) {
  if (n <= 1) return n;
  const double raw = std::ceil(C * scale * std::log(static_cast<double>(n)) - 1e-9);
  if (raw >= static_cast<double>(n)) return n;
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

/// Uniform sample of `size` elements of `parent` (sorted ascending) that
/// contains every pinned vertex; pinned vertices are placed first, the rest are
/// drawn without replacement. Returns a sorted list.
inline std::vector<Vertex> sample_subset(const std::vector<Vertex>& parent, std::size_t size,
                                         const std::vector<Vertex>& pinned, Rng& rng) {
  std::vector<Vertex> chosen;
  for (auto p : pinned) {
    if (!std::binary_search(parent.begin(), parent.end(), p))
      throw InputError("sample_subset: pinned vertex missing from parent level");
    if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
  }
  size = std::min(std::max(size, chosen.size()), parent.size());
  if (size == parent.size()) return parent;
  std::vector<Vertex> rest;
  rest.reserve(parent.size());
  for (auto v : parent)
    if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) rest.push_back(v);
  const std::size_t need = size - chosen.size();
  shuffle_prefix(rest, need, rng);
  chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(need));
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

enum class HierarchyDirection { shrinking, growing };

/// Nested vertex samples S_0..S_k.
///
/// shrinking: S_0 = V, |S_r| = min(n, ceil(C n^{1-r/k} ln n)), S_r within S_{r-1}.
/// growing:   S_k = V, |S_r| = min(n, ceil(C n^{r/k} ln n)),   S_r within S_{r+1}.
/// Pinned vertices appear in every level.
struct SampleHierarchy {
  std::vector<std::vector<Vertex>> levels;
  HierarchyDirection direction = HierarchyDirection::shrinking;
  SamplePlan plan;

  std::size_t k() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
};

inline std::size_t hierarchy_level_size(std::size_t n, std::size_t k, std::size_t r, double C,
                                        HierarchyDirection dir) {
  const auto nn = static_cast<double>(n);
  const double kk = static_cast<double>(k), rr = static_cast<double>(r);
  if (dir == HierarchyDirection::shrinking) {
    if (r == 0) return n;
    return hitting_set_size(n, C, std::pow(nn, 1.0 - rr / kk));
  }
  if (r == k) return n;
  return hitting_set_size(n, C, std::pow(nn, rr / kk));
}

inline SampleHierarchy build_hierarchy(std::size_t n, std::size_t k, const SamplePlan& plan,
                                       HierarchyDirection dir) {
  if (k < 1) throw InputError("hierarchy: level count k must be >= 1");
  plan.validate(n);
  SampleHierarchy h;
  h.direction = dir;
  h.plan = plan;
  h.levels.resize(k + 1);
  Rng rng(mix_seed(plan.seed));
  const auto all = iota_labels(n);
  if (dir == HierarchyDirection::shrinking) {
    h.levels[0] = all;
    for (std::size_t r = 1; r <= k; ++r)
      h.levels[r] = sample_subset(h.levels[r - 1], hierarchy_level_size(n, k, r, plan.C, dir),
                                  plan.pinned, rng);
  } else {
    h.levels[k] = all;
    for (std::size_t r = k; r-- > 0;)
      h.levels[r] = sample_subset(h.levels[r + 1], hierarchy_level_size(n, k, r, plan.C, dir),
                                  plan.pinned, rng);
  }
  return h;
}

}  // namespace allhops
