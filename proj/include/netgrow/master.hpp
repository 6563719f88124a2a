#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netgrow/models.hpp"
#include "netgrow/steady.hpp"

namespace netgrow {

struct EvolutionSnapshot {
  std::int64_t t = 0;
  std::vector<double> p;   // P(k, t) for k = m..k_max
  double overflow = 0.0;   // mass pushed above k_max, never renormalized away
};

struct EvolutionTrace {
  std::string model_name;
  std::int64_t m = 0;
  std::int64_t k_max = 0;
  std::vector<EvolutionSnapshot> snapshots;  // strictly increasing t
};

// Exact finite-time iteration of the mean distribution:
//
//   P(k, t+1) = t/(t+1) [ P(k,t)(1 - f_t(k)) + P(k-1,t) f_t(k-1) ] + d_k/(t+1)
//
// started from P(., 1) = d. Degrees only enter the array where mass can
// exist (k <= M + t - 1), so the rate is never evaluated on vacuous cells;
// outflow past k_max accumulates in the overflow bin. Multi-unit jumps of
// the multiple-link models are order 1/t and are not represented here; the
// stochastic simulator carries them.
//
// Starting at t = 1 without the seed network leaves several models with
// rates above 1 for the first few steps (uniform attachment has f_t = m/t).
// Inside that window the increment is simply certain and f is clamped to 1,
// the same order-1/T approximation as dropping the seed vertices. A rate
// still above 1 once t passes max(100, 10(M+1)) is a broken model and is
// reported with its (t, k).
inline EvolutionTrace evolve(const ModelSpec& model, std::int64_t T, std::int64_t k_max,
                             std::vector<std::int64_t> snapshot_times) {
  if (T < 2) throw std::invalid_argument("evolve: T must be >= 2");
  if (k_max < model.birth.M + 2)
    throw std::invalid_argument("evolve: k_max must be at least M + 2");
  require_valid(model.birth);
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()),
                       snapshot_times.end());
  for (std::int64_t t : snapshot_times)
    if (t < 1 || t > T)
      throw std::invalid_argument("evolve: snapshot time " + std::to_string(t) +
                                  " outside [1, T]");

  const std::int64_t m = model.birth.m;
  const std::int64_t M = model.birth.M;
  std::vector<double> p(static_cast<std::size_t>(k_max - m + 1), 0.0);
  for (std::int64_t k = m; k <= M; ++k)
    p[static_cast<std::size_t>(k - m)] = model.birth.at(k);
  double overflow = 0.0;

  const std::int64_t clamp_horizon = std::max<std::int64_t>(100, 10 * (M + 1));
  auto rate_at = [&model, clamp_horizon](std::int64_t t, std::int64_t k) {
    const double f = model.rate.eval(t, k);
    if (!(f >= 0.0))
      throw std::domain_error("evolve: rate " + std::to_string(f) + " outside [0,1] at t=" +
                              std::to_string(t) + ", k=" + std::to_string(k));
    if (f > 1.0) {
      if (t >= clamp_horizon)
        throw std::domain_error("evolve: rate " + std::to_string(f) + " outside [0,1] at t=" +
                                std::to_string(t) + ", k=" + std::to_string(k));
      return 1.0;
    }
    return f;
  };

  EvolutionTrace trace;
  trace.model_name = model.name;
  trace.m = m;
  trace.k_max = k_max;
  std::size_t next_snap = 0;
  if (next_snap < snapshot_times.size() && snapshot_times[next_snap] == 1) {
    trace.snapshots.push_back({1, p, overflow});
    ++next_snap;
  }

  for (std::int64_t t = 1; t < T; ++t) {
    const double w_old = static_cast<double>(t) / static_cast<double>(t + 1);
    const double w_new = 1.0 / static_cast<double>(t + 1);
    const std::int64_t top = std::min<std::int64_t>(k_max, M + t - 1);
    if (top == k_max)
      overflow = w_old * (overflow + p[static_cast<std::size_t>(k_max - m)] * rate_at(t, k_max));
    const std::int64_t top_next = std::min<std::int64_t>(k_max, M + t);

    // Descending sweep so p[k-1] still holds the time-t value. f_prev is the
    // rate at k-1, handed down to the next cell to avoid re-evaluation.
    double f_here = (top_next <= top) ? rate_at(t, top_next) : 0.0;
    for (std::int64_t k = top_next; k >= m; --k) {
      double value = w_new * model.birth.at(k);
      if (k <= top)
        value += w_old * p[static_cast<std::size_t>(k - m)] * (1.0 - f_here);
      double f_prev = 0.0;
      if (k > m) {
        f_prev = rate_at(t, k - 1);
        value += w_old * p[static_cast<std::size_t>(k - 1 - m)] * f_prev;
      }
      p[static_cast<std::size_t>(k - m)] = value;
      f_here = f_prev;
    }

    if (next_snap < snapshot_times.size() && snapshot_times[next_snap] == t + 1) {
      trace.snapshots.push_back({t + 1, p, overflow});
      ++next_snap;
    }
  }
  return trace;
}

// Total-variation distance of each snapshot to the limit distribution over
// the shared support [m, k_max].
inline std::vector<std::pair<std::int64_t, double>> convergence_metrics(
    const EvolutionTrace& trace, const DegreeDistribution& limit) {
  if (limit.m != trace.m || limit.k_max() != trace.k_max)
    throw std::domain_error("convergence_metrics: trace and limit must share m and k_max");
  std::vector<std::pair<std::int64_t, double>> result;
  result.reserve(trace.snapshots.size());
  for (const auto& snap : trace.snapshots) {
    double tv = 0.0;
    for (std::size_t i = 0; i < snap.p.size(); ++i)
      tv += std::abs(snap.p[i] - limit.probs[i]);
    result.emplace_back(snap.t, 0.5 * tv);
  }
  return result;
}

}  // namespace netgrow
