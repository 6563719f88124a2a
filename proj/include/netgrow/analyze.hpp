#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "netgrow/steady.hpp"

namespace netgrow {

struct CompareReport {
  double tv = 0.0;
  double ks = 0.0;
  double head_abs_err = 0.0;
  std::optional<double> gamma_fit;    // log-log slope over the fit range
  std::optional<double> gamma_exact;  // 1 + 1/A when available
  std::int64_t fit_lo = 0;
  std::int64_t fit_hi = 0;
};

// Total variation over the padded common support, with each side's
// truncated mass entering as one extra pseudo-bin.
inline double tv_distance(const DegreeDistribution& p, const DegreeDistribution& q) {
  const std::int64_t lo = std::min(p.m, q.m);
  const std::int64_t hi = std::max(p.k_max(), q.k_max());
  double sum = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) sum += std::abs(p.at(k) - q.at(k));
  sum += std::abs(p.truncated() - q.truncated());
  return 0.5 * sum;
}

inline double ks_distance(const DegreeDistribution& p, const DegreeDistribution& q) {
  const std::int64_t lo = std::min(p.m, q.m);
  const std::int64_t hi = std::max(p.k_max(), q.k_max());
  double cum_p = 0.0, cum_q = 0.0, worst = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    cum_p += p.at(k);
    cum_q += q.at(k);
    worst = std::max(worst, std::abs(cum_p - cum_q));
  }
  return worst;
}

// Negated least-squares slope of ln P(k) against ln k over [k_lo, k_hi].
inline double tail_slope_loglog(const DegreeDistribution& d, std::int64_t k_lo,
                                std::int64_t k_hi) {
  if (k_lo < 1) throw std::invalid_argument("tail_slope_loglog: k_lo must be >= 1");
  if (k_hi < 2 * k_lo)
    throw std::invalid_argument("tail_slope_loglog: need k_hi >= 2*k_lo for a stable fit");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double n = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double pk = d.at(k);
    if (!(pk > 0.0))
      throw std::domain_error("tail_slope_loglog: zero bin at k=" + std::to_string(k) +
                              "; try a narrower range");
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(pk);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

// Continuous-approximation maximum-likelihood exponent for a discrete
// power-law sample: gamma = 1 + n / sum ln(k_i / (k_min - 1/2)).
inline double tail_exponent_mle(const std::map<std::int64_t, std::int64_t>& histogram,
                                std::int64_t k_min) {
  if (k_min < 1) throw std::invalid_argument("tail_exponent_mle: k_min must be >= 1");
  std::int64_t n = 0;
  std::int64_t top = 0;
  double log_sum = 0.0;
  const double offset = static_cast<double>(k_min) - 0.5;
  for (const auto& [k, c] : histogram) {
    if (k < k_min) continue;
    n += c;
    top = std::max(top, k);
    log_sum += static_cast<double>(c) * std::log(static_cast<double>(k) / offset);
  }
  if (n < 100)
    throw std::domain_error("tail_exponent_mle: needs at least 100 tail observations, got " +
                            std::to_string(n));
  if (top == k_min)
    throw std::domain_error("tail_exponent_mle: every tail observation equals k_min; "
                            "the estimate diverges");
  return 1.0 + static_cast<double>(n) / log_sum;
}

inline CompareReport compare_report(const DegreeDistribution& exact,
                                    const DegreeDistribution& other, std::int64_t k_lo,
                                    std::int64_t k_hi) {
  CompareReport report;
  report.tv = tv_distance(exact, other);
  report.ks = ks_distance(exact, other);
  report.head_abs_err = std::abs(exact.at(exact.m) - other.at(exact.m));
  if (exact.tail && exact.tail->gamma) report.gamma_exact = *exact.tail->gamma;
  try {
    report.gamma_fit = tail_slope_loglog(other, k_lo, k_hi);
  } catch (const std::exception&) {
    report.gamma_fit = std::nullopt;  // sparse or zero bins in the range
  }
  report.fit_lo = k_lo;
  report.fit_hi = k_hi;
  return report;
}

}  // namespace netgrow
