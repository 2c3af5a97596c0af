#pragma once

// Log-space evaluators for the enumeration formulas, the det Q and Q^-1
// approximations, and the overlap law. Hypotheses that are asymptotic in n are
// never enforced; each estimate carries a regime flag from the raw inequality.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "regglab/errors.hpp"
#include "regglab/graph.hpp"
#include "regglab/rng.hpp"
#include "regglab/symmat.hpp"

namespace regglab {

enum class FormulaId {
  rhat,
  conjecture2,
  hm_partition,
  theorem5,
  gim_regular,
  gim_general,
  m1985,
};

constexpr std::string_view to_string(FormulaId f) {
  switch (f) {
    case FormulaId::rhat: return "rhat";
    case FormulaId::conjecture2: return "conjecture2";
    case FormulaId::hm_partition: return "hm_partition";
    case FormulaId::theorem5: return "theorem5";
    case FormulaId::gim_regular: return "gim_regular";
    case FormulaId::gim_general: return "gim_general";
    case FormulaId::m1985: return "m1985";
  }
  return "unknown";
}

struct AsymptoticEstimate {
  double log_value = 0;
  FormulaId formula_id = FormulaId::rhat;
  std::map<std::string, double> correction_terms;
  bool regime_satisfied = false;

  double value() const { return std::exp(log_value); }
};

struct DensityParams {
  int n = 0;
  int d = 0;
  int h = 0;
  double lambda = 0;
  double beta = 0;
  double spread = 0;  // lambda * (1 - lambda) * d

  // lambda(1-lambda)d > n / log n, the finite-n reading of the density hypothesis.
  bool dense_enough() const { return n > 1 && spread > n / std::log(static_cast<double>(n)); }
};

inline DensityParams density_params(int n, int d, int h) {
  if (h <= 0 || h >= d) fail(ErrorCode::DomainError, "need 0 < h < d, got h = " + std::to_string(h) + ", d = " + std::to_string(d));
  DensityParams p{n, d, h, static_cast<double>(h) / d, 0, 0};
  p.beta = 0.5 * std::log(p.lambda / (1 - p.lambda));
  p.spread = p.lambda * (1 - p.lambda) * d;
  return p;
}

namespace detail {

// log of e^{k/4} 2^{k/2} prod p_i^{n p_i / 2} total^{-n total / 2} multinomial(total; p)^n
// for k + 1 parts. Parts are sorted first so that every caller that names the
// same multiset of parts gets the same bits.
inline double partition_kernel(int n, std::vector<int> parts, int total) {
  std::sort(parts.begin(), parts.end());
  const double k = static_cast<double>(parts.size()) - 1;
  const double nd = n;
  double sum_plogp = 0;
  double sum_lgamma = 0;
  for (int p : parts) {
    sum_plogp += (nd * p / 2) * std::log(static_cast<double>(p));
    sum_lgamma += std::lgamma(p + 1.0);
  }
  const double lead = k / 4 + (k / 2) * std::numbers::ln2;
  return lead + sum_plogp - (nd * total / 2) * std::log(static_cast<double>(total)) +
         nd * (std::lgamma(total + 1.0) - sum_lgamma);
}

}  // namespace detail

/// R̂_h(d) = √2 e^{1/4} h^{hn/2} (d-h)^{(d-h)n/2} d^{-dn/2} C(d,h)^n.
inline AsymptoticEstimate rhat(int n, int h, int d) {
  if (d > n - 1) fail(ErrorCode::DomainError, "need d <= n - 1");
  auto p = density_params(n, d, h);
  AsymptoticEstimate e;
  e.formula_id = FormulaId::rhat;
  e.log_value = detail::partition_kernel(n, {h, d - h}, d);
  e.regime_satisfied = p.dense_enough();
  return e;
}

/// Estimated E|R_{d1}(G_{d1+d2})|; the same expression as rhat(n, d1, d1 + d2).
inline AsymptoticEstimate conjecture2_estimate(int n, int d1, int d2) {
  if (d1 <= 0 || d2 <= 0) fail(ErrorCode::DomainError, "need d1, d2 > 0");
  auto e = rhat(n, d1, d1 + d2);
  e.formula_id = FormulaId::conjecture2;
  return e;
}

/// Estimated number of ordered partitions of K_n into regular factors of degrees d_0, ..., d_k.
inline AsymptoticEstimate hm_partition_estimate(int n, const std::vector<int>& degrees) {
  if (degrees.size() < 2) fail(ErrorCode::DomainError, "need at least two parts");
  int sum = 0;
  for (int d : degrees) {
    if (d < 1) fail(ErrorCode::DomainError, "all parts must be >= 1");
    sum += d;
  }
  if (sum != n - 1) fail(ErrorCode::DegreeSumMismatch, "degrees must sum to n - 1 = " + std::to_string(n - 1));
  AsymptoticEstimate e;
  e.formula_id = FormulaId::hm_partition;
  e.log_value = detail::partition_kernel(n, degrees, n - 1);
  e.regime_satisfied = static_cast<int>(degrees.size()) - 1 < n;
  return e;
}

struct UV {
  double u = 0;
  double v = 0;
};

inline double u_coefficient(double lambda) { return lambda * (1 - lambda) * (1 - 6 * lambda + 6 * lambda * lambda) / 24; }
inline double v_coefficient(double lambda) { return lambda * (1 - lambda) * (1 - 2 * lambda) / 6; }

inline UV u_and_v(const std::vector<double>& theta, const Graph& g, double lambda) {
  if (static_cast<int>(theta.size()) != g.n()) fail(ErrorCode::SizeMismatch, "theta has the wrong length");
  double s3 = 0, s4 = 0;
  for (auto [j, k] : g.edges()) {
    const double t = theta[j] + theta[k];
    const double t3 = t * t * t;
    s3 += t3;
    s4 += t3 * t;
  }
  return {u_coefficient(lambda) * s4, v_coefficient(lambda) * s3};
}

struct IsserlisMoments {
  double exp_u = 0;
  double exp_v2 = 0;
};

/// Covariance of X with density proportional to exp(-x^T Q x): ½ Q^-1.
inline SymmetricMatrix gaussian_covariance(const Graph& g) { return inverse(signless_laplacian(g)).scaled(0.5); }

inline IsserlisMoments isserlis_moments(const Graph& g, double lambda) {
  const auto cov = gaussian_covariance(g);
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  // sigma[e][f] = Cov(X_j + X_k, X_l + X_m) for e = jk, f = lm.
  std::vector<double> sigma(m * m);
  for (std::size_t e = 0; e < m; ++e) {
    auto [j, k] = edges[e];
    for (std::size_t f = 0; f < m; ++f) {
      auto [l, q] = edges[f];
      sigma[e * m + f] = cov(j, l) + cov(j, q) + cov(k, l) + cov(k, q);
    }
  }
  double fourth = 0, sixth = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const double see = sigma[e * m + e];
    fourth += 3 * see * see;
    for (std::size_t f = 0; f < m; ++f) {
      const double sef = sigma[e * m + f];
      sixth += 9 * see * sigma[f * m + f] * sef + 6 * sef * sef * sef;
    }
  }
  const double cu = u_coefficient(lambda);
  const double cv = v_coefficient(lambda);
  return {cu * fourth, cv * cv * sixth};
}

struct MonteCarloMoments {
  double mean_u = 0;
  double stderr_u = 0;
  double mean_v2 = 0;
  double stderr_v2 = 0;
  std::uint64_t samples = 0;
};

/// Sample means of u(X) and v(X)^2 with X = L z, L L^T = ½ Q^-1.
inline MonteCarloMoments gaussian_moments_mc(const Graph& g, double lambda, std::uint64_t samples, SeedSpec seed) {
  if (samples < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
  const int n = g.n();
  const auto l = cholesky(gaussian_covariance(g));
  CounterRng rng(seed);
  std::vector<double> z(n), x(n);
  double su = 0, suu = 0, sv = 0, svv = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& zi : z) zi = rng.normal();
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int k = 0; k <= i; ++k) acc += l(i, k) * z[k];
      x[i] = acc;
    }
    const auto uv = u_and_v(x, g, lambda);
    const double v2 = uv.v * uv.v;
    su += uv.u;
    suu += uv.u * uv.u;
    sv += v2;
    svv += v2 * v2;
  }
  const double k = static_cast<double>(samples);
  auto stderr_of = [k](double s, double ss) { return std::sqrt(std::max(0.0, (ss - s * s / k) / (k - 1)) / k); };
  return {su / k, stderr_of(su, suu), sv / k, stderr_of(sv, svv), samples};
}

/// The enumeration formula for |R_h(G)| of a d-regular G, with det Q and both
/// Gaussian moments computed from G itself.
inline AsymptoticEstimate theorem5_count(const Graph& g, int h) {
  const auto reg = g.regularity();
  if (!reg.valid) fail(ErrorCode::DomainError, "host graph must be regular");
  const int n = g.n();
  const int d = reg.degree;
  auto p = density_params(n, d, h);
  const double lam = p.lambda;
  const auto det = determinant(signless_laplacian(g));
  if (det.sign <= 0) fail(ErrorCode::Singular, "signless Laplacian is singular (bipartite component)");
  const auto mom = isserlis_moments(g, lam);
  const double l1 = lam * (1 - lam);
  const double entropy = -(static_cast<double>(d) * n / 2) * (lam * std::log(lam) + (1 - lam) * std::log(1 - lam));
  const double gauss = -(n / 2.0) * std::log(2 * std::numbers::pi * l1);
  const double u_term = 4 * mom.exp_u / (l1 * l1);
  const double v_term = -4 * mom.exp_v2 / (l1 * l1 * l1);

  AsymptoticEstimate e;
  e.formula_id = FormulaId::theorem5;
  e.log_value = std::numbers::ln2 + entropy + gauss - 0.5 * det.log_abs + u_term + v_term;
  e.correction_terms = {{"exp_u", mom.exp_u}, {"exp_v2", mom.exp_v2}, {"logdetQ", det.log_abs},
                        {"u_term", u_term}, {"v_term", v_term}};
  e.regime_satisfied = p.dense_enough();
  return e;
}

struct DetQRegime {
  enum class Kind { dense, quasirandom } kind = Kind::dense;
  double alpha = 0;  // dense: d >= alpha n, alpha > 1/2
  double eps = 0;    // quasirandom: n <= eps d^2, eps <= 1/4

  static DetQRegime dense(double alpha) { return {Kind::dense, alpha, 0}; }
  static DetQRegime quasirandom(double eps) { return {Kind::quasirandom, 0, eps}; }
};

struct DetQBand {
  double center_log = 0;
  double halfwidth = 0;

  bool contains(double log_det) const { return std::abs(log_det - center_log) <= halfwidth; }
};

inline double c_alpha(double alpha) {
  const double r = std::sqrt((1 - alpha) / alpha);
  return r * r * r / (1 - r);
}

inline DetQBand detq_band(int n, int d, DetQRegime regime) {
  if (n < 1 || d < 1) fail(ErrorCode::DomainError, "need n, d >= 1");
  DetQBand band;
  band.center_log = std::numbers::ln2 + n * std::log(static_cast<double>(d)) - 0.5 - n / (2.0 * d);
  if (regime.kind == DetQRegime::Kind::dense) {
    if (!(regime.alpha > 0.5 && regime.alpha <= 1)) fail(ErrorCode::RegimeViolation, "dense regime needs 1/2 < alpha <= 1");
    if (d < regime.alpha * n) fail(ErrorCode::RegimeViolation, "dense regime needs d >= alpha n");
    band.halfwidth = c_alpha(regime.alpha);
  } else {
    if (!(regime.eps > 0 && regime.eps <= 0.25)) fail(ErrorCode::RegimeViolation, "quasirandom regime needs 0 < eps <= 1/4");
    if (n > regime.eps * d * d) fail(ErrorCode::RegimeViolation, "quasirandom regime needs n <= eps d^2");
    band.halfwidth = 4 * regime.eps;
  }
  return band;
}

/// Largest relative deviation of a common-neighbour count from d^2/n.
inline double common_neighbour_deviation(const Graph& g) {
  const auto reg = g.regularity();
  if (!reg.valid || reg.degree == 0) fail(ErrorCode::DomainError, "need a regular graph of positive degree");
  const double target = static_cast<double>(reg.degree) * reg.degree / g.n();
  const auto r = common_neighbour_range(g);
  return std::max(std::abs(r.min - target), std::abs(r.max - target)) / target;
}

/// Smallest eps for which G meets both quasirandom hypotheses.
inline double quasirandom_epsilon(const Graph& g) {
  const double d = g.regularity().degree;
  return std::max(common_neighbour_deviation(g), g.n() / (d * d));
}

/// Central values of the three-case approximation to Q^-1 for a regular G.
inline SymmetricMatrix qinv_approx(const Graph& g) {
  const auto reg = g.regularity();
  if (!reg.valid || reg.degree == 0) fail(ErrorCode::DomainError, "need a regular graph of positive degree");
  const double n = g.n();
  const double d = reg.degree;
  const double pre = (1 / d) * (1 + 1 / d - 1 / n);
  SymmetricMatrix m(g.n());
  for (int j = 0; j < g.n(); ++j) {
    m.set(j, j, pre * (1 + 1 / (2 * n)));
    for (int k = j + 1; k < g.n(); ++k) m.set(j, k, g.has_edge(j, k) ? pre * (1 / (2 * n) - 1 / d) : pre * (1 / (2 * n)));
  }
  return m;
}

/// Entrywise error allowance of qinv_approx: (1/d)(1 + 1/d - 1/n) 4 eps / n.
inline double qinv_error_bound(int n, int d, double eps) {
  return (1.0 / d) * (1 + 1.0 / d - 1.0 / n) * 4 * eps / n;
}

namespace detail {

inline AsymptoticEstimate gim_from_moments(int n, int d, double m, double bracket, FormulaId id) {
  const double coef = (n - 1.0 - d) / (4.0 * d);
  AsymptoticEstimate e;
  e.formula_id = id;
  e.log_value = m * std::log(d / (n - 1.0)) + coef * bracket;
  e.correction_terms = {{"exponent", coef * bracket}};
  e.regime_satisfied = std::min(d, n - d - 1) >= n / std::log(static_cast<double>(n));
  return e;
}

inline void check_gim_domain(int n, int d) {
  if (n < 2 || d < 1 || d > n - 1) fail(ErrorCode::DomainError, "need 1 <= d <= n - 1");
}

}  // namespace detail

/// P_d(H) for a graph H with the given degree sequence.
inline AsymptoticEstimate gim_probability(int n, int d, const DegreeSequence& h) {
  detail::check_gim_domain(n, d);
  if (static_cast<int>(h.h.size()) != n) fail(ErrorCode::SizeMismatch, "degree sequence has the wrong length");
  if (!h.valid()) fail(ErrorCode::DomainError, "degree sequence must have an even sum and entries <= n - 1");
  double sum = 0, sum_sq = 0;
  for (int x : h.h) {
    sum += x;
    sum_sq += static_cast<double>(x) * x;
  }
  const double m = sum / 2;
  const double mu = sum_sq / n;
  const double bracket = 4 * m * m / (static_cast<double>(n) * n) + 4 * m / n - 2 * mu;
  return detail::gim_from_moments(n, d, m, bracket, FormulaId::gim_general);
}

/// P_d(H) for an h-regular H: (d/(n-1))^{hn/2} exp(-(n-1-d) h (h-2) / (4d)).
inline AsymptoticEstimate gim_probability_regular(int n, int d, int h) {
  detail::check_gim_domain(n, d);
  if (h < 0 || h > n - 1 || (static_cast<long long>(n) * h) % 2) fail(ErrorCode::DomainError, "invalid regular degree");
  const double m = static_cast<double>(h) * n / 2;
  return detail::gim_from_moments(n, d, m, -static_cast<double>(h) * (h - 2), FormulaId::gim_regular);
}

/// Graphs isomorphic to a d1-regular G1 avoiding a d2-regular G2.
inline AsymptoticEstimate m1985_estimate(int n, int d1, int d2) {
  if (d1 < 1 || d2 < 0) fail(ErrorCode::DomainError, "need d1 >= 1 and d2 >= 0");
  if ((static_cast<long long>(n) * d1) % 2) fail(ErrorCode::DomainError, "n d1 must be even");
  const double nd1 = static_cast<double>(n) * d1;
  const double a = (d1 - 1) / 2.0;
  const double correction = -a - a * a - d1 * static_cast<double>(d2) / 2;
  AsymptoticEstimate e;
  e.formula_id = FormulaId::m1985;
  e.log_value = std::lgamma(nd1 + 1) - std::lgamma(nd1 / 2 + 1) - (nd1 / 2) * std::numbers::ln2 -
                n * std::lgamma(d1 + 1.0) + correction;
  e.correction_terms = {{"exponent", correction}};
  e.regime_satisfied = d1 * static_cast<double>(d1 + d2) < std::sqrt(nd1);
  return e;
}

/// Poisson(h^2/2) mass at m.
inline double overlap_pmf(int h, int m) {
  if (m < 0) return 0;
  const double rate = h * static_cast<double>(h) / 2;
  if (rate == 0) return m == 0 ? 1.0 : 0.0;
  return std::exp(-rate + m * std::log(rate) - std::lgamma(m + 1.0));
}

struct TailBoundParams {
  double a = 0;
  double b = 0;
  double rho = 0;
  int K = 0;
  double m_alpha = 0;
};

struct TailBound {
  double m_alpha = 0;
  double bound = 0;
  long long exponent = 0;
  TailBoundParams params;
};

/// P(|H1 ∩ H2*| >= m_alpha) <= 2 (e/alpha)^floor((alpha-1) h n / (4 (n-h-1))).
inline TailBound overlap_tail_bound(int h, int n, double alpha) {
  if (alpha < std::numbers::e) fail(ErrorCode::DomainError, "alpha must be >= e");
  if (h < 1) fail(ErrorCode::DomainError, "h must be >= 1");
  if (n <= h + 1) fail(ErrorCode::DomainError, "need n > h + 1");
  const double rest = n - h - 1.0;
  TailBound t;
  t.params.a = 2 * rest;
  t.params.b = static_cast<double>(h) * h * n;
  t.params.rho = t.params.b / t.params.a;
  t.params.K = 2 * h;
  t.m_alpha = alpha * h * h * n / (2 * rest);
  t.params.m_alpha = t.m_alpha;
  t.exponent = static_cast<long long>(std::floor((alpha - 1) * h * n / (4 * rest)));
  t.bound = 2 * std::pow(std::numbers::e / alpha, static_cast<double>(t.exponent));
  return t;
}

}  // namespace regglab
