#pragma once

// The verification pipelines behind each CLI subcommand. Every command is a
// pure function of its options (seeded) and returns an ExperimentReport;
// sample i of a sweep always draws from seed.child(i).

#include <chrono>
#include <cmath>
#include <exception>
#include <locale>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "regglab/asymptotics.hpp"
#include "regglab/coupling.hpp"
#include "regglab/exactcount.hpp"
#include "regglab/graph_io.hpp"
#include "regglab/overlap.hpp"
#include "regglab/report.hpp"
#include "regglab/sampler.hpp"

namespace regglab {

/// Runs f(i) for i in [0, count) on up to `threads` workers and returns the
/// results in index order. The first exception (by index) is rethrown.
template <class F>
auto parallel_indexed(std::size_t count, unsigned threads, F f) -> std::vector<decltype(f(std::size_t{0}))> {
  using T = decltype(f(std::size_t{0}));
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  auto work = [&](unsigned k) {
    for (std::size_t i = k; i < count; i += threads) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work, k);
  work(0);
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

/// Integer window of common-neighbour counts allowed by (1 ± eps) d^2/n.
struct CommonNeighbourWindow {
  int lo = 0;
  int hi = 0;
};

inline CommonNeighbourWindow quasirandom_window(int n, int d, double eps) {
  const double target = static_cast<double>(d) * d / n;
  return {static_cast<int>(std::ceil(target * (1 - eps) - 1e-12)), static_cast<int>(std::floor(target * (1 + eps) + 1e-12))};
}

inline long window_violation(const Graph& g, CommonNeighbourWindow w) {
  long total = 0;
  for (Vertex j = 0; j < g.n(); ++j)
    for (Vertex k = j + 1; k < g.n(); ++k) {
      const int c = common_neighbours(g, j, k);
      total += std::max(0, w.lo - c) + std::max(0, c - w.hi);
    }
  return total;
}

/// A d-regular graph whose common-neighbour counts all lie in (1 ± eps) d^2/n.
/// Anneals over double-edge swaps from a switching-chain sample, scoring the
/// total window violation, and restarts from a fresh sample every 200k
/// proposals. Uniform samples at desk scale almost never qualify, so this is a
/// targeted search, not a sampler.
inline Graph find_quasirandom_graph(int n, int d, double eps, SeedSpec seed, std::uint64_t max_steps = 2'000'000) {
  require_regular_parity(n, d);
  if (d < 1 || static_cast<double>(n) / (static_cast<double>(d) * d) > eps) {
    fail(ErrorCode::RegimeViolation, "quasirandom regime needs n/d^2 <= eps");
  }
  const auto window = quasirandom_window(n, d, eps);
  if (window.lo > window.hi) fail(ErrorCode::RegimeViolation, "empty common-neighbour window");
  constexpr std::uint64_t round_steps = 200'000;
  std::uint64_t used = 0;
  for (std::uint64_t round = 0; used < max_steps; ++round) {
    Graph g = sample_switching(n, d, default_switching_steps(n, d), seed.child(2 * round)).graph;
    auto edges = g.edges();
    CounterRng rng(seed.child(2 * round + 1));
    long score = window_violation(g, window);
    for (std::uint64_t step = 0; score > 0 && step < round_steps && used < max_steps; ++step, ++used) {
      const auto i = rng.below(std::uint64_t{edges.size()});
      auto j = rng.below(std::uint64_t{edges.size() - 1});
      if (j >= i) ++j;
      auto [u, v] = edges[i];
      auto [x, y] = edges[j];
      if (rng() & 1) std::swap(x, y);
      if (u == x || u == y || v == x || v == y || g.has_edge(u, x) || g.has_edge(v, y)) continue;
      g.remove_edge(u, v);
      g.remove_edge(x, y);
      g.add_edge(u, x);
      g.add_edge(v, y);
      const long next = window_violation(g, window);
      const double temperature = 0.5 / (1 + step / 20000.0);
      if (next <= score || rng.uniform() < std::exp((score - next) / temperature)) {
        score = next;
        edges[i] = {std::min(u, x), std::max(u, x)};
        edges[j] = {std::min(v, y), std::max(v, y)};
      } else {
        g.remove_edge(u, x);
        g.remove_edge(v, y);
        g.add_edge(u, v);
        g.add_edge(x, y);
      }
    }
    if (score == 0) return g;
  }
  fail(ErrorCode::NoConvergence, "no quasirandom graph found within the step budget");
}

namespace detail {

inline std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
}

inline Json estimate_json(const AsymptoticEstimate& e, std::optional<double> exact = std::nullopt) {
  Json j{{"formula", std::string(to_string(e.formula_id))},
         {"log_value", number_json(e.log_value)},
         {"value", number_json(e.value())},
         {"regime_satisfied", e.regime_satisfied}};
  Json terms = Json::object();
  for (const auto& [k, v] : e.correction_terms) terms[k] = number_json(v);
  j["correction_terms"] = terms;
  if (exact) j["ratio_to_exact"] = number_json(e.value() / *exact);
  return j;
}

inline double big_to_double(const BigCount& x) { return x.convert_to<double>(); }

// Counting R_h(G) blows up for mid-range h on large hosts.
inline void require_countable(int n, int h, int d, int max_enum, const std::string& hint = "") {
  if (n > 64) fail(ErrorCode::TooLarge, "exact counting supports n <= 64");
  if (n > max_enum && h >= 2 && h <= d - 2) {
    fail(ErrorCode::TooLarge, "exact count with n = " + std::to_string(n) + " exceeds --max-enum " + std::to_string(max_enum) + hint);
  }
}

}  // namespace detail

/// Rows of results["table"] as CSV with a header row.
inline std::string report_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  if (!r.results.contains("table")) return {};
  const auto& table = r.results.at("table");
  const auto& columns = table.at("columns");
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i].get<std::string>();
  out << '\n';
  for (const auto& row : table.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const auto& cell = row[i];
      if (cell.is_string()) out << cell.get<std::string>();
      else if (cell.is_number_float()) out << cell.get<double>();
      else out << cell.dump();
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- count

struct CountOptions {
  std::optional<std::string> graph_file;
  std::optional<int> complete;
  std::optional<int> n;
  std::optional<int> d;
  int h = 1;
  SeedSpec seed;
  int max_enum = 12;
};

inline ExperimentReport cmd_count(const CountOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.command = "count";
  r.seed = o.seed;
  const int sources = (o.graph_file ? 1 : 0) + (o.complete ? 1 : 0) + ((o.n || o.d) ? 1 : 0);
  if (sources != 1) fail(ErrorCode::InvalidArgument, "give exactly one of --graph, --complete, or --n with --d");
  Graph g;
  if (o.graph_file) {
    g = read_edge_list_file(*o.graph_file);
    r.params["graph"] = *o.graph_file;
  } else if (o.complete) {
    if (*o.complete < 1) fail(ErrorCode::InvalidArgument, "--complete needs n >= 1");
    g = complete_graph(*o.complete);
    r.params["complete"] = *o.complete;
  } else {
    if (!o.n || !o.d) fail(ErrorCode::InvalidArgument, "--n and --d go together");
    g = sample_regular(*o.n, *o.d, o.seed).graph;
    r.params["n"] = *o.n;
    r.params["d"] = *o.d;
  }
  r.params["h"] = o.h;
  r.params["max_enum"] = o.max_enum;
  const auto reg = g.regularity();
  detail::require_countable(g.n(), o.h, reg.valid ? reg.degree : g.min_degree(), o.max_enum);

  const BigCount count = count_regular_spanning_subgraphs(g, o.h);
  const double exact = detail::big_to_double(count);
  r.results["n"] = g.n();
  r.results["m"] = g.m();
  r.results["regular_degree"] = reg.valid ? Json(reg.degree) : Json(nullptr);
  r.results["count"] = to_string(count);
  Json row = Json::array({g.n(), o.h, to_string(count)});
  if (reg.valid && o.h > 0 && o.h < reg.degree) {
    const auto rh = rhat(g.n(), o.h, reg.degree);
    r.results["rhat"] = detail::estimate_json(rh, exact);
    row.push_back(number_json(rh.value() / exact));
    try {
      const auto t5 = theorem5_count(g, o.h);
      r.results["theorem5"] = detail::estimate_json(t5, exact);
      row.push_back(number_json(t5.value() / exact));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Singular) throw;
      r.results["theorem5"] = "singular";
      row.push_back("singular");
    }
  } else {
    row.push_back("");
    row.push_back("");
  }
  r.results["table"] = {{"columns", {"n", "h", "count", "rhat_ratio", "theorem5_ratio"}}, {"rows", Json::array({row})}};
  r.runtime_ms = detail::elapsed_ms(start);
  return r;
}

// ---------------------------------------------------------- conjectures

struct ConjectureOptions {
  int n = 0;
  int d1 = 0;
  int d2 = 0;
  std::string mode = "exact";
  std::uint64_t trials = 1000;
  SeedSpec seed;
  int max_enum = 12;
  unsigned threads = 1;
};

inline ExperimentReport cmd_conjectures(const ConjectureOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.command = "conjectures";
  r.seed = o.seed;
  r.params = {{"n", o.n}, {"d1", o.d1}, {"d2", o.d2}, {"mode", o.mode}, {"max_enum", o.max_enum}};
  if (o.d1 < 1 || o.d2 < 1) fail(ErrorCode::InvalidArgument, "need d1, d2 >= 1");
  const int d = o.d1 + o.d2;
  require_regular_parity(o.n, o.d1);
  require_regular_parity(o.n, o.d2);
  require_regular_parity(o.n, d);
  const auto estimate = conjecture2_estimate(o.n, o.d1, o.d2);

  if (o.mode == "exact") {
    if (o.n > o.max_enum && d >= 3 && d <= o.n - 4) {
      fail(ErrorCode::TooLarge, "exact mode enumerates R_d(K_n); n = " + std::to_string(o.n) +
                                    " exceeds --max-enum; use --mode mc for sampled estimates");
    }
    const auto profile = subgraph_count_profile(o.n, o.d1, d, {o.max_enum});
    BigCount s1 = 0, s2 = 0;
    std::map<BigCount, std::uint64_t> histogram;
    for (const auto& c : profile) {
      s1 += c;
      s2 += c * c;
      ++histogram[c];
    }
    const BigCount total = profile.size();
    const Rational first(s1, total), second(s2, total);
    r.results["graphs"] = profile.size();
    r.results["first_moment"] = rational_json(first);
    r.results["second_moment"] = rational_json(second);
    r.results["second_over_first_sq"] = rational_json(second / (first * first));
    r.results["conjecture2"] = detail::estimate_json(estimate, to_double(first));
    r.checks["cauchy_schwarz"] = second >= first * first;

    Json rows = Json::array();
    Json hist = Json::array();
    for (const auto& [c, k] : histogram) {
      const Rational ratio = Rational(c) / first;
      const Rational p(BigCount(k), total);
      hist.push_back({{"count", to_string(c)}, {"graphs", k}, {"ratio_to_mean", rational_json(ratio)}});
      rows.push_back({to_string(c), k, to_double(ratio), to_double(p)});
    }
    r.results["concentration"] = hist;
    r.results["table"] = {{"columns", {"count", "graphs", "ratio_to_mean", "probability"}}, {"rows", rows}};

    const int d3 = o.n - 1 - d;
    if (o.n <= 8) {
      const BigCount partitions = count_clique_partitions(o.n, {o.d1, o.d2, d3});
      const Rational lhs = Rational(total) * first;
      r.results["double_counting"] = {{"lhs", rational_json(lhs)}, {"partitions", to_string(partitions)}};
      r.checks["double_counting"] = lhs == Rational(partitions);

      const auto coupling = build_sprinkling_coupling(o.n, o.d1, o.d2);
      r.results["sprinkling"] = {{"eps_star", rational_json(coupling.eps_star)},
                                 {"closed_form_eps", rational_json(coupling.closed_form_eps)},
                                 {"s_size", coupling.s_size},
                                 {"t_size", coupling.t_size},
                                 {"ordered_pairs", true}};
      r.checks["eps_star_closed_form"] = coupling.eps_star == coupling.closed_form_eps;
      r.checks["coupling_marginals_uniform"] = coupling.joint.has_uniform_marginals();
    } else {
      r.results["double_counting"] = "skipped: clique partitions limited to n <= 8";
      r.results["sprinkling"] = "skipped: sprinkling constraint limited to n <= 8";
    }
  } else if (o.mode == "mc") {
    if (o.trials < 2) fail(ErrorCode::InvalidArgument, "mc mode needs --trials >= 2");
    detail::require_countable(o.n, o.d1, d, o.max_enum);
    r.params["trials"] = o.trials;
    struct Draw {
      double count;
      bool approximate;
    };
    auto draws = parallel_indexed(o.trials, o.threads, [&](std::size_t i) {
      auto s = sample_regular(o.n, d, o.seed.child(i));
      return Draw{detail::big_to_double(count_regular_spanning_subgraphs(s.graph, o.d1)), s.stats.approximate};
    });
    const double k = static_cast<double>(o.trials);
    double sx = 0, sxx = 0, sx3 = 0, sx4 = 0;
    bool approximate = false;
    for (const auto& dr : draws) {
      const double x = dr.count, x2 = x * x;
      sx += x;
      sxx += x2;
      sx3 += x2 * x;
      sx4 += x2 * x2;
      approximate = approximate || dr.approximate;
    }
    const double a = sx / k, b = sxx / k;
    const double var_x = (sxx - k * a * a) / (k - 1);
    const double var_x2 = (sx4 - k * b * b) / (k - 1);
    const double cov = (sx3 - k * a * b) / (k - 1);
    const double ga = -2 * b / (a * a * a), gb = 1 / (a * a);
    const double ratio_var = (ga * ga * var_x + gb * gb * var_x2 + 2 * ga * gb * cov) / k;
    r.results["first_moment"] = {{"estimate", number_json(a)}, {"stderr", number_json(std::sqrt(std::max(0.0, var_x) / k))}};
    r.results["second_moment"] = {{"estimate", number_json(b)}, {"stderr", number_json(std::sqrt(std::max(0.0, var_x2) / k))}};
    r.results["second_over_first_sq"] = {{"estimate", number_json(b / (a * a))},
                                         {"stderr", number_json(std::sqrt(std::max(0.0, ratio_var)))}};
    r.results["conjecture2"] = detail::estimate_json(estimate, a);
    r.results["sampler_approximate"] = approximate;
    Json rows = Json::array();
    for (std::size_t i = 0; i < draws.size(); ++i) rows.push_back({i, draws[i].count});
    r.results["table"] = {{"columns", {"sample", "count"}}, {"rows", rows}};
  } else {
    fail(ErrorCode::InvalidArgument, "--mode must be exact or mc");
  }
  r.runtime_ms = detail::elapsed_ms(start);
  return r;
}

// -------------------------------------------------------------- overlap

struct OverlapOptions {
  int n = 0;
  int h = 1;
  std::string mode = "exact";
  std::uint64_t trials = 100000;
  std::vector<double> alphas = {std::numbers::e};
  SeedSpec seed;
  int max_perm = 9;
  unsigned threads = 1;
};

inline ExperimentReport cmd_overlap(const OverlapOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.command = "overlap";
  r.seed = o.seed;
  r.params = {{"n", o.n}, {"h", o.h}, {"mode", o.mode}, {"alphas", o.alphas}, {"max_perm", o.max_perm}};
  if (o.h < 1) fail(ErrorCode::InvalidArgument, "need h >= 1");
  const Graph h1 = sample_regular(o.n, o.h, o.seed.child(0)).graph;
  const Graph h2 = sample_regular(o.n, o.h, o.seed.child(1)).graph;
  OverlapDistribution dist;
  if (o.mode == "exact") {
    if (o.n > o.max_perm) {
      fail(ErrorCode::TooLarge, "exact mode visits n! permutations; n = " + std::to_string(o.n) + " exceeds --max-perm; use --mode mc");
    }
    dist = overlap_distribution_exact(h1, h2, {o.max_perm});
  } else if (o.mode == "mc") {
    r.params["trials"] = o.trials;
    dist = overlap_distribution_mc(h1, h2, o.trials, o.seed.child(2), o.threads);
  } else {
    fail(ErrorCode::InvalidArgument, "--mode must be exact or mc");
  }
  r.results["h1"] = to_edge_string(h1);
  r.results["h2"] = to_edge_string(h2);
  r.results["permutations"] = dist.trials;

  Json pmf = Json::array();
  Json rows = Json::array();
  for (int m = 0; m <= dist.max_support(); ++m) {
    Json entry{{"m", m}, {"poisson", overlap_pmf(o.h, m)}};
    if (dist.mode == OverlapDistribution::Mode::exact) {
      const auto it = dist.exact.find(m);
      const Rational p = it == dist.exact.end() ? Rational(0) : it->second;
      entry["probability"] = rational_json(p);
      rows.push_back({m, to_string(p), to_double(p), overlap_pmf(o.h, m)});
    } else {
      const auto it = dist.sampled.find(m);
      const OverlapEstimate e = it == dist.sampled.end() ? OverlapEstimate{} : it->second;
      entry["estimate"] = e.estimate;
      entry["stderr"] = e.stderr_;
      rows.push_back({m, e.estimate, e.stderr_, overlap_pmf(o.h, m)});
    }
    pmf.push_back(entry);
  }
  r.results["pmf"] = pmf;
  r.results["tv_poisson"] = poisson_tv_distance(dist, o.h);
  if (dist.mode == OverlapDistribution::Mode::exact) {
    r.results["table"] = {{"columns", {"m", "exact", "probability", "poisson"}}, {"rows", rows}};
  } else {
    r.results["table"] = {{"columns", {"m", "estimate", "stderr", "poisson"}}, {"rows", rows}};
  }

  Json tails = Json::array();
  for (double alpha : o.alphas) {
    const auto t = overlap_tail_bound(o.h, o.n, alpha);
    const double p = dist.tail(t.m_alpha);
    const bool holds = p <= t.bound;
    tails.push_back({{"alpha", alpha},
                     {"m_alpha", t.m_alpha},
                     {"probability", p},
                     {"bound", t.bound},
                     {"holds", holds},
                     {"params", {{"a", t.params.a}, {"b", t.params.b}, {"rho", t.params.rho}, {"K", t.params.K}}}});
    if (dist.mode == OverlapDistribution::Mode::exact) {
      std::ostringstream name;
      name.imbue(std::locale::classic());
      name << "tail_bound_alpha_" << alpha;
      r.checks[name.str()] = to_double(dist.exact_tail(t.m_alpha)) <= t.bound;
    }
  }
  r.results["tail"] = tails;
  r.runtime_ms = detail::elapsed_ms(start);
  return r;
}

// -------------------------------------------------------------- spectra

struct SpectraOptions {
  int n = 0;
  int d = 0;
  int samples = 10;
  std::string regime = "dense";
  double alpha = 2.0 / 3;
  double eps = 0;  // quasirandom: 0 means measure eps from each graph
  SeedSpec seed;
  unsigned threads = 1;
};

struct SpectraSample {
  int sign = 0;
  double log_det = 0;
  double eps_measured = 0;
  CommonNeighbourRange range;
  bool in_regime = false;
  std::string regime_note;
  DetQBand band;
  bool inside = false;
};

inline SpectraSample spectra_sample(const Graph& g, const SpectraOptions& o) {
  SpectraSample s;
  const auto det = determinant(signless_laplacian(g));
  s.sign = det.sign;
  s.log_det = det.log_abs;
  s.range = common_neighbour_range(g);
  s.eps_measured = o.d > 0 ? quasirandom_epsilon(g) : 0;
  try {
    if (o.regime == "dense") {
      s.band = detq_band(o.n, o.d, DetQRegime::dense(o.alpha));
    } else {
      const double eps = o.eps > 0 ? o.eps : s.eps_measured;
      if (s.eps_measured > eps) fail(ErrorCode::RegimeViolation, "common-neighbour deviation exceeds eps");
      s.band = detq_band(o.n, o.d, DetQRegime::quasirandom(eps));
    }
    s.in_regime = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RegimeViolation) throw;
    s.regime_note = e.what();
  }
  s.inside = s.in_regime && s.sign > 0 && s.band.contains(s.log_det);
  return s;
}

inline ExperimentReport cmd_spectra(const SpectraOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.command = "spectra";
  r.seed = o.seed;
  r.params = {{"n", o.n}, {"d", o.d}, {"samples", o.samples}, {"regime", o.regime}};
  if (o.regime == "dense") r.params["alpha"] = o.alpha;
  else if (o.regime == "quasirandom") r.params["eps"] = o.eps;
  else fail(ErrorCode::InvalidArgument, "--regime must be dense or quasirandom");
  if (o.samples < 1) fail(ErrorCode::InvalidArgument, "need --samples >= 1");
  require_regular_parity(o.n, o.d);
  if (o.d < 1) fail(ErrorCode::InvalidArgument, "need d >= 1");

  auto samples = parallel_indexed(static_cast<std::size_t>(o.samples), o.threads, [&](std::size_t i) {
    const Graph g = o.regime == "quasirandom" ? find_quasirandom_graph(o.n, o.d, o.eps > 0 ? o.eps : 0.25, o.seed.child(i))
                                              : sample_regular(o.n, o.d, o.seed.child(i)).graph;
    return spectra_sample(g, o);
  });

  const double target = static_cast<double>(o.d) * o.d / o.n;
  const double slack = o.n > 1 ? std::pow(o.d, 3) / (static_cast<double>(o.n) * o.n * std::log(o.n)) : 0;
  int in_regime = 0, inside = 0, singular = 0, in_window = 0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    in_regime += s.in_regime;
    inside += s.inside;
    singular += s.sign == 0;
    const bool window = s.range.min >= target - slack && s.range.max <= target + slack;
    in_window += window;
    rows.push_back({i, s.sign, number_json(s.log_det), s.band.center_log, s.band.halfwidth, s.in_regime, s.inside,
                    s.eps_measured, s.range.min, s.range.max, window});
  }
  r.results["table"] = {{"columns",
                         {"sample", "sign", "log_det", "center", "halfwidth", "in_regime", "inside_band", "eps_measured",
                          "cn_min", "cn_max", "cn_in_window"}},
                        {"rows", rows}};
  r.results["in_regime"] = in_regime;
  r.results["inside_band"] = inside;
  r.results["singular"] = singular;
  r.results["common_neighbour_window"] = {{"center", target}, {"slack", slack}, {"samples_inside", in_window}};
  Json notes = Json::array();
  for (const auto& s : samples)
    if (!s.regime_note.empty()) notes.push_back(s.regime_note);
  r.results["regime_violations"] = notes;
  r.checks["band_contains_all_in_regime"] = inside == in_regime;
  r.runtime_ms = detail::elapsed_ms(start);
  return r;
}

// -------------------------------------------------------------- moments

struct MomentsOptions {
  int n = 0;
  int d = 0;
  int h = 1;
  int samples = 10;
  std::uint64_t mc_trials = 100000;
  SeedSpec seed;
  int max_enum = 12;
  unsigned threads = 1;
};

struct MomentSample {
  bool singular = false;
  IsserlisMoments exact;
  MonteCarloMoments mc;
  double z_u = 0;
  double z_v2 = 0;
  std::optional<double> theorem5_ratio;
};

inline double z_score(double estimate, double exact, double se) {
  if (se > 0) return (estimate - exact) / se;
  return estimate == exact ? 0.0 : std::numeric_limits<double>::infinity();
}

inline ExperimentReport cmd_moments(const MomentsOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.command = "moments";
  r.seed = o.seed;
  r.params = {{"n", o.n}, {"d", o.d}, {"h", o.h}, {"samples", o.samples}, {"mc_trials", o.mc_trials}, {"max_enum", o.max_enum}};
  require_regular_parity(o.n, o.d);
  const auto p = density_params(o.n, o.d, o.h);
  if (o.samples < 1) fail(ErrorCode::InvalidArgument, "need --samples >= 1");
  const bool countable = (static_cast<long long>(o.n) * o.h) % 2 == 0 &&
                         !(o.n > 64 || (o.n > o.max_enum && o.h >= 2 && o.h <= o.d - 2));

  auto samples = parallel_indexed(static_cast<std::size_t>(o.samples), o.threads, [&](std::size_t i) {
    const SeedSpec s = o.seed.child(i);
    const Graph g = o.d == o.n - 1 ? complete_graph(o.n) : sample_regular(o.n, o.d, s.child(0)).graph;
    MomentSample m;
    try {
      m.exact = isserlis_moments(g, p.lambda);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Singular) throw;
      m.singular = true;
      return m;
    }
    m.mc = gaussian_moments_mc(g, p.lambda, o.mc_trials, s.child(1));
    m.z_u = z_score(m.mc.mean_u, m.exact.exp_u, m.mc.stderr_u);
    m.z_v2 = z_score(m.mc.mean_v2, m.exact.exp_v2, m.mc.stderr_v2);
    if (countable) {
      const double exact = detail::big_to_double(count_regular_spanning_subgraphs(g, o.h));
      m.theorem5_ratio = theorem5_count(g, o.h).value() / exact;
    }
    return m;
  });

  int over3 = 0, over4 = 0, singular = 0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& m = samples[i];
    if (m.singular) {
      ++singular;
      rows.push_back({i, true, "", "", "", "", "", "", ""});
      continue;
    }
    for (double z : {m.z_u, m.z_v2}) {
      over3 += std::abs(z) > 3;
      over4 += std::abs(z) > 4;
    }
    rows.push_back({i, false, m.exact.exp_u, m.mc.mean_u, number_json(m.z_u), m.exact.exp_v2, m.mc.mean_v2,
                    number_json(m.z_v2), m.theorem5_ratio ? number_json(*m.theorem5_ratio) : Json("")});
  }
  r.results["table"] = {{"columns", {"sample", "singular", "exp_u", "mc_u", "z_u", "exp_v2", "mc_v2", "z_v2", "theorem5_ratio"}},
                        {"rows", rows}};
  r.results["lambda"] = p.lambda;
  r.results["singular"] = singular;
  r.results["z_over_3"] = over3;
  r.results["z_over_4"] = over4;
  r.results["regime_satisfied"] = p.dense_enough();
  r.checks["z_within_4"] = over4 == 0;
  r.runtime_ms = detail::elapsed_ms(start);
  return r;
}

}  // namespace regglab
