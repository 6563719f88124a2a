#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace netgrow {

// Scaled limit of the per-step increment probability: F(k) = A*k + B for
// degrees k >= m. A valid limit has A >= 0 and F(m) >= 0, which keeps every
// denominator 1 + F(k) positive. F(m) = 0 is admitted (degree m may be
// absorbing, as in group-aggregation chains).
struct AffineLimit {
  double A = 0.0;
  double B = 0.0;
  std::int64_t m = 0;  // smallest degree the chain can hold
};

inline std::vector<std::string> validate_limit(const AffineLimit& lim) {
  std::vector<std::string> bad;
  if (!(lim.A >= 0.0)) bad.push_back("slope A must be nonnegative");
  const double f_m = lim.A * static_cast<double>(lim.m) + lim.B;
  if (!(f_m >= 0.0)) bad.push_back("F(m) must be nonnegative");
  if (!(1.0 + f_m > 0.0)) bad.push_back("1 + F(m) must be positive");
  if (lim.m < 0) bad.push_back("minimum degree m must be nonnegative");
  return bad;
}

inline void require_valid(const AffineLimit& lim) {
  const auto bad = validate_limit(lim);
  if (!bad.empty()) {
    std::string msg = "invalid affine limit:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw std::invalid_argument(msg);
  }
}

inline double eval_limit(const AffineLimit& lim, std::int64_t k) {
  if (k < lim.m)
    throw std::domain_error("eval_limit: k=" + std::to_string(k) +
                            " below minimum degree m=" + std::to_string(lim.m));
  return lim.A * static_cast<double>(k) + lim.B;
}

// Per-step increment probability f_t(k), given as an opaque evaluator.
struct StepRate {
  std::function<double(std::int64_t t, std::int64_t k)> eval;
  std::string description;
};

// Limiting law of a vertex's degree at the moment it joins the network.
// Stored densely over [m, M]; gaps inside the support are allowed.
struct BirthDistribution {
  std::int64_t m = 0;     // smallest degree with positive mass
  std::int64_t M = 0;     // largest degree with positive mass
  std::vector<double> d;  // d[k - m] for k in [m, M]

  double at(std::int64_t k) const {
    if (k < m || k > M) return 0.0;
    return d[static_cast<std::size_t>(k - m)];
  }
};

inline BirthDistribution make_birth(const std::map<std::int64_t, double>& entries) {
  std::int64_t lo = 0, hi = 0;
  bool seen = false;
  for (const auto& [k, p] : entries) {
    if (p < 0.0) throw std::invalid_argument("make_birth: negative probability at k=" + std::to_string(k));
    if (p > 0.0) {
      if (!seen) lo = k;
      hi = k;
      seen = true;
    }
  }
  if (!seen) throw std::invalid_argument("make_birth: no positive entries");
  if (lo < 0) throw std::invalid_argument("make_birth: negative degree in support");
  BirthDistribution b;
  b.m = lo;
  b.M = hi;
  b.d.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [k, p] : entries)
    if (k >= lo && k <= hi) b.d[static_cast<std::size_t>(k - lo)] = p;
  return b;
}

inline std::vector<std::string> validate_birth(const BirthDistribution& b) {
  std::vector<std::string> bad;
  if (b.d.empty()) {
    bad.push_back("empty support");
    return bad;
  }
  if (b.m < 0) bad.push_back("minimum degree must be nonnegative");
  if (b.M != b.m + static_cast<std::int64_t>(b.d.size()) - 1)
    bad.push_back("dense storage does not span [m, M]");
  double sum = 0.0;
  for (double p : b.d) {
    if (!(p >= 0.0)) bad.push_back("negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    bad.push_back("total mass " + std::to_string(sum) + " is not 1 within 1e-12");
  if (!(b.d.front() > 0.0)) bad.push_back("d_m must be positive");
  if (!(b.d.back() > 0.0)) bad.push_back("d_M must be positive");
  return bad;
}

inline void require_valid(const BirthDistribution& b) {
  const auto bad = validate_birth(b);
  if (!bad.empty()) {
    std::string msg = "invalid birth distribution:";
    for (const auto& s : bad) msg += " " + s + ";";
    throw std::invalid_argument(msg);
  }
}

// Trichotomy of the limit law. A > 0 gives a power-law tail with exponent
// 1 + 1/A; A = 0 with B > 0 gives a geometric tail; anything else cannot
// arise from a growing chain (B = 0 included: F would freeze every degree).
enum class ChainClass { ScaleFree, Geometric, Impossible };

inline ChainClass classify(double A, double B) {
  if (A > 0.0) return ChainClass::ScaleFree;
  if (A == 0.0 && B > 0.0) return ChainClass::Geometric;
  return ChainClass::Impossible;
}

inline const char* to_string(ChainClass c) {
  switch (c) {
    case ChainClass::ScaleFree: return "scale-free";
    case ChainClass::Geometric: return "geometric";
    default: return "impossible";
  }
}

// Recover (A, B) from an opaque rate by an affine least-squares fit of
// t*f_t(k) against k at the largest grid time. The certificate demands that
// the fit residual does not grow between the two largest grid times at any
// probe degree; exactly-affine rates have zero residuals at both, so the
// comparison is non-strict up to rounding.
inline AffineLimit extract_limit(const StepRate& rate,
                                 const std::vector<std::int64_t>& k_probe,
                                 const std::vector<std::int64_t>& t_grid) {
  if (k_probe.size() < 3)
    throw std::invalid_argument("extract_limit: need at least 3 probe degrees");
  if (t_grid.size() < 2)
    throw std::invalid_argument("extract_limit: need at least 2 grid times");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("extract_limit: t_grid must be strictly increasing");
  if (t_grid.back() < 1000000)
    throw std::invalid_argument("extract_limit: largest grid time must be at least 1e6");

  const std::int64_t t1 = t_grid[t_grid.size() - 1];
  const std::int64_t t0 = t_grid[t_grid.size() - 2];

  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  const double n = static_cast<double>(k_probe.size());
  for (std::int64_t k : k_probe) {
    const double kd = static_cast<double>(k);
    const double y = static_cast<double>(t1) * rate.eval(t1, k);
    sk += kd;
    sy += y;
    skk += kd * kd;
    sky += kd * y;
  }
  const double denom = n * skk - sk * sk;
  if (!(denom > 0.0))
    throw std::invalid_argument("extract_limit: probe degrees must not all coincide");
  const double A = (n * sky - sk * sy) / denom;
  const double B = (sy - A * sk) / n;

  std::string divergent;
  for (std::int64_t k : k_probe) {
    const double fit = A * static_cast<double>(k) + B;
    const double r1 = std::abs(static_cast<double>(t1) * rate.eval(t1, k) - fit);
    const double r0 = std::abs(static_cast<double>(t0) * rate.eval(t0, k) - fit);
    if (r1 > r0 + 1e-12 * (1.0 + std::abs(fit))) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), " k=%lld: |r|(t=%lld)=%.3e -> |r|(t=%lld)=%.3e;",
                    static_cast<long long>(k), static_cast<long long>(t0), r0,
                    static_cast<long long>(t1), r1);
      divergent += buf;
    }
  }
  if (!divergent.empty())
    throw std::runtime_error("extract_limit: t*f_t(k) is not settling, residuals grow:" + divergent);

  AffineLimit lim;
  lim.A = A;
  lim.B = B;
  lim.m = *std::min_element(k_probe.begin(), k_probe.end());
  return lim;
}

}  // namespace netgrow
