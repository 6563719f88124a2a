#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netgrow/rate.hpp"

namespace netgrow {

namespace detail {

// Lanczos approximation, g = 7, nine coefficients. Good to a few ulps for
// every positive argument this project evaluates.
inline double lanczos_series(double x) {
  static constexpr double coeff[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  double s = coeff[0];
  for (int i = 1; i < 9; ++i) s += coeff[i] / (x - 1.0 + static_cast<double>(i));
  return s;
}

constexpr double half_log_two_pi = 0.91893853320467274178;  // ln(2*pi)/2

}  // namespace detail

inline double log_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
  const double t = x + 6.5;
  return detail::half_log_two_pi + (x - 0.5) * std::log(t) - t +
         std::log(detail::lanczos_series(x));
}

// ln Gamma(z) - ln Gamma(z + c) with the big leading terms combined before
// rounding. The plain difference of two log_gamma values carries ~1e-11 of
// cancellation noise by z = 1e4, too much when the exponentiated ratio has
// to hold 1e-10.
inline double log_gamma_ratio(double z, double c) {
  if (!(z > 0.0) || !(z + c > 0.0))
    throw std::domain_error("log_gamma_ratio: arguments must be positive");
  const double u = z + 6.5;
  return -(z - 0.5) * std::log1p(c / u) - c * std::log(z + c + 6.5) + c +
         std::log(detail::lanczos_series(z) / detail::lanczos_series(z + c));
}

// Tail metadata attached to exact distributions. gamma/prefactor are present
// only for scale-free limits; truncated_mass is the analytic mass above
// k_max (Gamma-ratio telescoping when A > 0, geometric sum when A = 0).
struct TailInfo {
  std::optional<double> gamma;
  std::optional<double> prefactor;  // C with P(k) ~ C * k^(-gamma)
  double truncated_mass = 0.0;
};

struct DegreeDistribution {
  std::int64_t m = 0;
  std::vector<double> probs;  // probs[k - m] = P(k)
  std::optional<TailInfo> tail;

  std::int64_t k_max() const {
    return m + static_cast<std::int64_t>(probs.size()) - 1;
  }
  double at(std::int64_t k) const {
    if (k < m || k > k_max()) return 0.0;
    return probs[static_cast<std::size_t>(k - m)];
  }
  double truncated() const { return tail ? tail->truncated_mass : 0.0; }
};

// P(m) = d_m / (1 + F(m)), the head of the stationary recursion.
inline double head_probability(double d_m, double F_m) {
  if (!(d_m > 0.0)) throw std::domain_error("head_probability: d_m must be positive");
  if (!(1.0 + F_m > 0.0)) throw std::domain_error("head_probability: 1 + F(m) must be positive");
  return d_m / (1.0 + F_m);
}

// P(k) = [F(k-1) P(k-1) + d_k] / (1 + F(k)), one stationary balance step.
inline double next_probability(double P_prev, double F_prev, double F_k, double d_k) {
  if (!(1.0 + F_k > 0.0)) throw std::domain_error("next_probability: 1 + F(k) must be positive");
  if (!(F_prev >= 0.0)) throw std::domain_error("next_probability: F(k-1) must be nonnegative");
  if (!(P_prev >= 0.0 && P_prev <= 1.0))
    throw std::domain_error("next_probability: P(k-1) must lie in [0,1]");
  if (!(d_k >= 0.0 && d_k <= 1.0))
    throw std::domain_error("next_probability: d_k must lie in [0,1]");
  return (F_prev * P_prev + d_k) / (1.0 + F_k);
}

inline double tail_exponent_exact(double A) {
  if (!(A > 0.0)) throw std::domain_error("tail_exponent_exact: requires A > 0");
  return 1.0 + 1.0 / A;
}

namespace detail {

// Analytic tail metadata for an affine limit, anchored at P(M).
inline TailInfo affine_tail(const std::vector<double>& probs, std::int64_t m,
                            std::int64_t k_max, std::int64_t M, const AffineLimit& lim) {
  TailInfo tail;
  if (lim.A > 0.0) {
    const double a = lim.B / lim.A;
    const double c = 1.0 + 1.0 / lim.A;
    tail.gamma = c;
    const double aM = static_cast<double>(M) + a;
    if (aM > 0.0) {
      const double pM = probs[static_cast<std::size_t>(M - m)];
      const double log_c = std::log(pM) - log_gamma_ratio(aM, c);
      tail.prefactor = std::exp(log_c);
      // Sum of Gamma(k+a)/Gamma(k+a+c) over k > k_max telescopes to
      // A * Gamma(k_max+1+a) / Gamma(k_max+1+a+1/A).
      tail.truncated_mass =
          std::exp(log_c + std::log(lim.A) +
                   log_gamma_ratio(static_cast<double>(k_max) + 1.0 + a, c - 1.0));
    } else {
      // F(M) = 0 with a point birth: the chain never leaves M.
      tail.prefactor = 0.0;
      tail.truncated_mass = 0.0;
    }
  } else {
    // Geometric continuation: P(k+1) = B/(1+B) P(k) beyond the support, so
    // the mass above k_max is exactly P(k_max) * B.
    tail.truncated_mass = probs.back() * lim.B;
  }
  return tail;
}

}  // namespace detail

// Forward iteration of the stationary balance; algebraically identical to
// the ratio-of-products closed expression but free of 0/0 and cancellation.
inline DegreeDistribution steady_by_recurrence(const BirthDistribution& birth,
                                               const AffineLimit& lim,
                                               std::int64_t k_max) {
  require_valid(birth);
  require_valid(lim);
  if (k_max < birth.M)
    throw std::domain_error("steady_by_recurrence: k_max=" + std::to_string(k_max) +
                            " is below the largest birth degree M=" + std::to_string(birth.M));
  DegreeDistribution dist;
  dist.m = birth.m;
  dist.probs.assign(static_cast<std::size_t>(k_max - birth.m + 1), 0.0);
  double p = head_probability(birth.at(birth.m), eval_limit(lim, birth.m));
  dist.probs[0] = p;
  for (std::int64_t k = birth.m + 1; k <= k_max; ++k) {
    p = next_probability(p, eval_limit(lim, k - 1), eval_limit(lim, k), birth.at(k));
    dist.probs[static_cast<std::size_t>(k - birth.m)] = p;
  }
  dist.tail = detail::affine_tail(dist.probs, dist.m, k_max, birth.M, lim);
  return dist;
}

// Scale-free closed form: the balance recursion up to the birth support,
// then P(k) = C * Gamma(k + B/A) / Gamma(k + B/A + 1 + 1/A) beyond it, with
// C anchored at P(M). Independent of the pure recurrence for every k > M.
inline DegreeDistribution steady_closed_form_affine(const BirthDistribution& birth,
                                                    const AffineLimit& lim,
                                                    std::int64_t k_max) {
  require_valid(birth);
  require_valid(lim);
  if (!(lim.A > 0.0))
    throw std::domain_error("steady_closed_form_affine: requires A > 0");
  if (k_max < birth.M)
    throw std::domain_error("steady_closed_form_affine: k_max below the largest birth degree");
  const double a = lim.B / lim.A;
  const double c = 1.0 + 1.0 / lim.A;
  // The Gamma arguments grow with k, so checking the first few past the
  // anchor covers the whole branch.
  for (std::int64_t k = birth.M; k <= std::min(birth.M + 3, k_max); ++k)
    if (!(static_cast<double>(k) + a > 0.0))
      throw std::domain_error("steady_closed_form_affine: Gamma argument k + B/A <= 0 at k=" +
                              std::to_string(k));

  DegreeDistribution dist;
  dist.m = birth.m;
  dist.probs.assign(static_cast<std::size_t>(k_max - birth.m + 1), 0.0);
  double p = head_probability(birth.at(birth.m), eval_limit(lim, birth.m));
  dist.probs[0] = p;
  for (std::int64_t k = birth.m + 1; k <= birth.M; ++k) {
    p = next_probability(p, eval_limit(lim, k - 1), eval_limit(lim, k), birth.at(k));
    dist.probs[static_cast<std::size_t>(k - birth.m)] = p;
  }
  const double log_c =
      std::log(dist.probs[static_cast<std::size_t>(birth.M - birth.m)]) -
      log_gamma_ratio(static_cast<double>(birth.M) + a, c);
  for (std::int64_t k = birth.M + 1; k <= k_max; ++k)
    dist.probs[static_cast<std::size_t>(k - birth.m)] =
        std::exp(log_c + log_gamma_ratio(static_cast<double>(k) + a, c));
  dist.tail = detail::affine_tail(dist.probs, dist.m, k_max, birth.M, lim);
  return dist;
}

struct NormalizationReport {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  bool closes = false;  // partial_sum + tail_bound within 1e-6 of 1
};

inline NormalizationReport normalization_report(const DegreeDistribution& dist) {
  double sum = 0.0, comp = 0.0;  // Kahan
  for (double p : dist.probs) {
    const double y = p - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double bound = 0.0;
  if (dist.tail) {
    if (dist.tail->gamma && dist.tail->prefactor) {
      // Midpoint integral of C x^(-gamma) above k_max.
      const double g = *dist.tail->gamma;
      const double c = *dist.tail->prefactor;
      bound = c * std::pow(static_cast<double>(dist.k_max()) + 0.5, 1.0 - g) / (g - 1.0);
    } else {
      bound = dist.tail->truncated_mass;
    }
  }
  NormalizationReport report;
  report.partial_sum = sum;
  report.tail_bound = bound;
  report.closes = std::abs(sum + bound - 1.0) <= 1e-6;
  return report;
}

}  // namespace netgrow
