#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "netgrow/models.hpp"
#include "netgrow/rng.hpp"
#include "netgrow/steady.hpp"

namespace netgrow {

// Aggregated outcome of one or more growth runs over the same model and N.
struct SimResult {
  std::string model_name;
  std::int64_t n_vertices = 0;  // N per run
  std::uint64_t seed = 0;       // base seed; run i uses seed + i
  std::int64_t n_trials = 1;
  std::map<std::int64_t, std::int64_t> histogram;  // degree -> count over all runs
  std::string rng_id = Rng::id();
};

namespace detail {

// Repeated-id list: vertex v appears once per unit of sampling weight, so a
// weight-proportional draw is one uniform index.
class PickList {
 public:
  void push(std::int32_t v) { ids_.push_back(v); }
  std::int64_t size() const { return static_cast<std::int64_t>(ids_.size()); }
  std::int32_t pick(Rng& rng) const { return ids_[static_cast<std::size_t>(rng.below(size()))]; }
  std::int32_t at(std::int64_t i) const { return ids_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<std::int32_t> ids_;
};

// Draw `count` pairwise-distinct ids from an arbitrary sampler, rejecting
// duplicates. The retry budget guards degenerate seeds where fewer than
// `count` distinct ids are reachable.
template <typename DrawFn>
inline void sample_distinct(int count, DrawFn&& draw, std::vector<std::int32_t>& out) {
  out.clear();
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 10000)
      throw std::runtime_error("rejection sampling exceeded 10000 retries while drawing " +
                               std::to_string(count) + " distinct targets");
    const std::int32_t v = draw();
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
}

inline std::map<std::int64_t, std::int64_t> histogram_of(const std::vector<std::int64_t>& values) {
  std::map<std::int64_t, std::int64_t> h;
  for (std::int64_t v : values) ++h[v];
  return h;
}

// Ring seed used by the undirected edge-per-step models: m0 = m + 1 vertices
// so every vertex has positive degree (a single edge when m0 = 2).
inline std::int64_t seed_ring(std::int64_t m0, std::vector<std::int64_t>& degree) {
  if (m0 == 2) {
    degree[0] = degree[1] = 1;
    return 1;  // seed edge count
  }
  for (std::int64_t i = 0; i < m0; ++i) degree[static_cast<std::size_t>(i)] = 2;
  return m0;
}

inline std::int64_t seed_ring(std::int64_t m0, std::vector<std::int64_t>& degree,
                              PickList& picker) {
  const std::int64_t edges = seed_ring(m0, degree);
  for (std::int64_t i = 0; i < m0; ++i)
    for (std::int64_t r = 0; r < degree[static_cast<std::size_t>(i)]; ++r)
      picker.push(static_cast<std::int32_t>(i));
  return edges;
}

inline void require_size(std::int64_t N, std::int64_t seed_size, const char* model) {
  if (N < seed_size)
    throw std::invalid_argument(std::string(model) + ": N=" + std::to_string(N) +
                                " is below the seed network size " + std::to_string(seed_size));
}

inline std::vector<std::int64_t> grow_ba(std::int64_t m, std::int64_t N, Rng& rng) {
  const std::int64_t m0 = m + 1;
  require_size(N, m0, "ba");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  PickList picker;
  const std::int64_t seed_edges = seed_ring(m0, degree, picker);
  std::vector<std::int32_t> targets;
  for (std::int64_t v = m0; v < N; ++v) {
    sample_distinct(static_cast<int>(m), [&] { return picker.pick(rng); }, targets);
    for (std::int32_t w : targets) {
      ++degree[static_cast<std::size_t>(w)];
      picker.push(w);
    }
    degree[static_cast<std::size_t>(v)] = m;
    for (std::int64_t j = 0; j < m; ++j) picker.push(static_cast<std::int32_t>(v));
    assert(picker.size() == 2 * (seed_edges + m * (v - m0 + 1)));
  }
  (void)seed_edges;
  return degree;
}

inline std::vector<std::int64_t> grow_random(std::int64_t m, std::int64_t N, Rng& rng) {
  const std::int64_t m0 = m + 1;
  require_size(N, m0, "random");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  seed_ring(m0, degree);
  std::vector<std::int32_t> targets;
  for (std::int64_t v = m0; v < N; ++v) {
    sample_distinct(static_cast<int>(m),
                    [&] { return static_cast<std::int32_t>(rng.below(v)); }, targets);
    for (std::int32_t w : targets) ++degree[static_cast<std::size_t>(w)];
    degree[static_cast<std::size_t>(v)] = m;
  }
  return degree;
}

inline std::vector<std::int64_t> grow_ll1(std::int64_t m, double p, std::int64_t N, Rng& rng) {
  const std::int64_t m0 = m + 1;
  require_size(N, m0, "ll1");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  PickList picker;
  const std::int64_t seed_edges = seed_ring(m0, degree, picker);
  std::int64_t total_degree = 2 * seed_edges;
  std::vector<std::int32_t> targets;
  for (std::int64_t v = m0; v < N; ++v) {
    // Target weight (1-p)k + p decomposes into a degree-proportional part of
    // total mass (1-p) * sum(k) and a uniform part of mass p * |V|.
    const double w_pref = (1.0 - p) * static_cast<double>(total_degree);
    const double w_unif = p * static_cast<double>(v);
    sample_distinct(static_cast<int>(m),
                    [&] {
                      const double x = rng.unit() * (w_pref + w_unif);
                      if (x < w_pref) return picker.pick(rng);
                      return static_cast<std::int32_t>(rng.below(v));
                    },
                    targets);
    for (std::int32_t w : targets) {
      ++degree[static_cast<std::size_t>(w)];
      picker.push(w);
    }
    degree[static_cast<std::size_t>(v)] = m;
    for (std::int64_t j = 0; j < m; ++j) picker.push(static_cast<std::int32_t>(v));
    total_degree += 2 * m;
    assert(picker.size() == total_degree);
  }
  return degree;
}

inline std::vector<std::int64_t> grow_ll2(std::int64_t m, double p, std::int64_t N, Rng& rng) {
  const std::int64_t m0 = m + 1;
  require_size(N, m0, "ll2");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  PickList picker;
  seed_ring(m0, degree, picker);
  for (std::int64_t v = m0; v < N; ++v) {
    // Links placed independently: duplicates are possible but order 1/t.
    for (std::int64_t j = 0; j < m; ++j) {
      const std::int32_t w = (rng.unit() < p) ? static_cast<std::int32_t>(rng.below(v))
                                              : picker.pick(rng);
      ++degree[static_cast<std::size_t>(w)];
      picker.push(w);
    }
    degree[static_cast<std::size_t>(v)] = m;
    for (std::int64_t j = 0; j < m; ++j) picker.push(static_cast<std::int32_t>(v));
  }
  return degree;
}

inline std::vector<std::int64_t> grow_collab(std::int64_t T, std::int64_t m0, std::int64_t N,
                                             Rng& rng) {
  require_size(N, m0, "collab");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  PickList picker;
  // Completing cliques needs pairwise edge existence, so collab keeps a
  // packed edge set alongside the degree sequence.
  std::unordered_set<std::uint64_t> edges;
  auto edge_key = [](std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  auto add_edge = [&](std::int32_t a, std::int32_t b) {
    edges.insert(edge_key(a, b));
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
    picker.push(a);
    picker.push(b);
  };
  for (std::int32_t i = 0; i < m0; ++i)
    for (std::int32_t j = i + 1; j < m0; ++j) add_edge(i, j);

  std::vector<std::int32_t> targets;
  for (std::int64_t v = m0; v < N; ++v) {
    sample_distinct(static_cast<int>(T - 1), [&] { return picker.pick(rng); }, targets);
    for (std::int32_t w : targets) add_edge(static_cast<std::int32_t>(v), w);
    for (std::size_t i = 0; i < targets.size(); ++i)
      for (std::size_t j = i + 1; j < targets.size(); ++j)
        if (!edges.count(edge_key(targets[i], targets[j]))) add_edge(targets[i], targets[j]);
    assert(picker.size() == 2 * static_cast<std::int64_t>(edges.size()));
  }
  return degree;
}

inline std::vector<std::int64_t> grow_zrz(std::int64_t m, std::int64_t N, Rng& rng) {
  require_size(N, m, "zrz");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  // Flat clique registry, stride m. Every clique a new vertex spawns stays
  // eligible forever, so selection is uniform over all registered cliques.
  std::vector<std::int32_t> cliques;
  cliques.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(N - m + 1));
  for (std::int64_t i = 0; i < m; ++i) {
    degree[static_cast<std::size_t>(i)] = m - 1;
    cliques.push_back(static_cast<std::int32_t>(i));
  }
  std::vector<std::int32_t> members(static_cast<std::size_t>(m));
  for (std::int64_t v = m; v < N; ++v) {
    const std::int64_t n_cliques = static_cast<std::int64_t>(cliques.size()) / m;
    const std::int64_t c = rng.below(n_cliques);
    for (std::int64_t j = 0; j < m; ++j)
      members[static_cast<std::size_t>(j)] = cliques[static_cast<std::size_t>(c * m + j)];
    degree[static_cast<std::size_t>(v)] = m;
    for (std::int32_t w : members) ++degree[static_cast<std::size_t>(w)];
    // m fresh cliques: the new vertex with each (m-1)-subset of the chosen one.
    for (std::int64_t skip = 0; skip < m; ++skip) {
      for (std::int64_t j = 0; j < m; ++j)
        cliques.push_back(j == skip ? static_cast<std::int32_t>(v)
                                    : members[static_cast<std::size_t>(j)]);
    }
  }
  return degree;
}

inline std::vector<std::int64_t> grow_kk(double p, std::int64_t N, Rng& rng) {
  require_size(N, 1, "kk");
  std::vector<std::int64_t> group_size;
  std::vector<std::int32_t> element_group;  // one entry per element, for size-biased picks
  std::vector<std::int32_t> born(static_cast<std::size_t>(N), -1);  // -1 = join step
  group_size.push_back(1);
  element_group.push_back(0);
  born[0] = 0;
  for (std::int64_t t = 1; t < N; ++t) {
    if (rng.unit() < p) {
      const std::int32_t g =
          element_group[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(element_group.size())))];
      ++group_size[static_cast<std::size_t>(g)];
      element_group.push_back(g);
      // born[t] stays -1: a join step leaves a permanent size-0 chain.
    } else {
      const auto g = static_cast<std::int32_t>(group_size.size());
      group_size.push_back(1);
      element_group.push_back(g);
      born[static_cast<std::size_t>(t)] = g;
    }
  }
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(N), 0);
  for (std::int64_t t = 0; t < N; ++t) {
    const std::int32_t g = born[static_cast<std::size_t>(t)];
    sizes[static_cast<std::size_t>(t)] = (g < 0) ? 0 : group_size[static_cast<std::size_t>(g)];
  }
  return sizes;
}

inline std::vector<std::int64_t> grow_dms(std::int64_t m, double H, std::int64_t N, Rng& rng) {
  require_size(N, 1, "dms");
  std::vector<std::int64_t> indeg(static_cast<std::size_t>(N), 0);
  std::vector<std::int32_t> link_targets;  // one entry per link, for in-degree-biased picks
  link_targets.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(N));
  for (std::int64_t s = 1; s < N; ++s) {
    const std::int64_t sites = s + 1;  // the new site is eligible immediately
    for (std::int64_t j = 0; j < m; ++j) {
      // Weight H + q decomposes into H per site plus one per incoming link.
      const auto links = static_cast<std::int64_t>(link_targets.size());
      const double total = H * static_cast<double>(sites) + static_cast<double>(links);
      const double x = rng.unit() * total;
      std::int32_t target;
      if (x < H * static_cast<double>(sites) || links == 0)
        target = static_cast<std::int32_t>(rng.below(sites));
      else
        target = link_targets[static_cast<std::size_t>(rng.below(links))];
      ++indeg[static_cast<std::size_t>(target)];
      link_targets.push_back(target);
    }
  }
  return indeg;
}

inline std::vector<std::int64_t> grow_lcd(std::int64_t m, std::int64_t N, Rng& rng) {
  require_size(N, 1, "lcd");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N), 0);
  PickList picker;
  degree[0] = 2;  // seed self-loop
  picker.push(0);
  picker.push(0);
  for (std::int64_t v = 1; v < N; ++v) {
    for (std::int64_t j = 0; j < m; ++j) {
      // The new vertex competes with weight deg(v) + 1: its placed edges
      // plus the dangling half-edge being wired now.
      const std::int64_t total = picker.size() + degree[static_cast<std::size_t>(v)] + 1;
      const std::int64_t x = rng.below(total);
      const std::int32_t w =
          (x < picker.size()) ? picker.at(x) : static_cast<std::int32_t>(v);
      if (w == static_cast<std::int32_t>(v)) {
        degree[static_cast<std::size_t>(v)] += 2;
        picker.push(w);
        picker.push(w);
      } else {
        ++degree[static_cast<std::size_t>(v)];
        ++degree[static_cast<std::size_t>(w)];
        picker.push(static_cast<std::int32_t>(v));
        picker.push(w);
      }
    }
    assert(picker.size() == 2 * (1 + m * v));
  }
  return degree;
}

}  // namespace detail

// One full growth run; the histogram covers all N vertices (sites for dms,
// per-step chains for kk).
inline SimResult grow(const ModelSpec& model, std::int64_t N, std::uint64_t seed) {
  if (N > INT32_MAX)
    throw std::invalid_argument("grow: N exceeds the 32-bit vertex id range");
  Rng rng(seed);
  auto param = [&model](const std::string& key) {
    auto it = model.params.find(key);
    if (it == model.params.end())
      throw std::invalid_argument("grow: model is missing parameter '" + key + "'");
    return it->second;
  };
  std::vector<std::int64_t> values;
  switch (model.rule) {
    case GenerativeRule::DegreeProportional:
      values = detail::grow_ba(static_cast<std::int64_t>(param("m")), N, rng);
      break;
    case GenerativeRule::UniformTargets:
      values = detail::grow_random(static_cast<std::int64_t>(param("m")), N, rng);
      break;
    case GenerativeRule::ShiftedLinearWeights:
      values = detail::grow_ll1(static_cast<std::int64_t>(param("m")), param("p"), N, rng);
      break;
    case GenerativeRule::PerLinkMixture:
      values = detail::grow_ll2(static_cast<std::int64_t>(param("m")), param("p"), N, rng);
      break;
    case GenerativeRule::CliqueCompletion:
      values = detail::grow_collab(static_cast<std::int64_t>(param("T")),
                                   static_cast<std::int64_t>(param("m0")), N, rng);
      break;
    case GenerativeRule::CliqueRegistry:
      values = detail::grow_zrz(static_cast<std::int64_t>(param("m")), N, rng);
      break;
    case GenerativeRule::GroupAggregation:
      values = detail::grow_kk(param("p"), N, rng);
      break;
    case GenerativeRule::AttractivenessInflow:
      values = detail::grow_dms(static_cast<std::int64_t>(param("m")), param("H"), N, rng);
      break;
    case GenerativeRule::LoopyPreferential:
      values = detail::grow_lcd(static_cast<std::int64_t>(param("m")), N, rng);
      break;
  }
  SimResult result;
  result.model_name = model.name;
  result.n_vertices = N;
  result.seed = seed;
  result.n_trials = 1;
  result.histogram = detail::histogram_of(values);
  return result;
}

// n_trials independent runs seeded seed_base + i, merged by addition; the
// aggregate does not depend on completion order. Runs execute concurrently
// in waves no wider than the hardware thread count.
inline SimResult trials(const ModelSpec& model, std::int64_t N, std::uint64_t seed_base,
                        std::int64_t n_trials) {
  if (n_trials < 1) throw std::invalid_argument("trials: n_trials must be >= 1");
  SimResult total;
  total.model_name = model.name;
  total.n_vertices = N;
  total.seed = seed_base;
  total.n_trials = n_trials;
  const std::int64_t width =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::thread::hardware_concurrency()));
  for (std::int64_t lo = 0; lo < n_trials; lo += width) {
    const std::int64_t hi = std::min(n_trials, lo + width);
    std::vector<std::future<SimResult>> wave;
    wave.reserve(static_cast<std::size_t>(hi - lo));
    for (std::int64_t i = lo; i < hi; ++i)
      wave.push_back(std::async(std::launch::async, [&model, N, seed_base, i] {
        return grow(model, N, seed_base + static_cast<std::uint64_t>(i));
      }));
    for (std::int64_t i = lo; i < hi; ++i) {
      try {
        const SimResult one = wave[static_cast<std::size_t>(i - lo)].get();
        for (const auto& [k, c] : one.histogram) total.histogram[k] += c;
      } catch (const std::exception& e) {
        throw std::runtime_error("trials: run " + std::to_string(i) + " failed: " + e.what());
      }
    }
  }
  return total;
}

// Normalized histogram with m at the smallest observed degree.
inline DegreeDistribution empirical_distribution(const SimResult& r) {
  if (r.histogram.empty())
    throw std::invalid_argument("empirical_distribution: empty histogram");
  DegreeDistribution dist;
  dist.m = r.histogram.begin()->first;
  const std::int64_t hi = r.histogram.rbegin()->first;
  dist.probs.assign(static_cast<std::size_t>(hi - dist.m + 1), 0.0);
  const double denom =
      static_cast<double>(r.n_vertices) * static_cast<double>(r.n_trials);
  for (const auto& [k, c] : r.histogram)
    dist.probs[static_cast<std::size_t>(k - dist.m)] = static_cast<double>(c) / denom;
  return dist;
}

}  // namespace netgrow
