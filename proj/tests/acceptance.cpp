// Acceptance run: one PASS/FAIL line per criterion, each with a pinned time
// budget. Exit status is the number of failed criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "regglab/experiments.hpp"

using namespace regglab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BigCount double_factorial_odd(int n) {
  BigCount r = 1;
  for (int k = n - 1; k > 1; k -= 2) r *= k;
  return r;
}

Outcome matching_counts() {
  for (int n : {4, 6, 8, 10, 12}) {
    const auto got = count_regular_spanning_subgraphs(complete_graph(n), 1);
    if (got != double_factorial_odd(n)) return {false, fmt("n=%d: got %s", n, to_string(got).c_str())};
  }
  return {true, "n in {4,6,8,10,12} equal (n-1)!!"};
}

Outcome complement_symmetry() {
  long pairs = 0;
  for (int n = 2; n <= 8; ++n)
    for (int d = 1; d < n; ++d) {
      if (n * d % 2) continue;
      for (const Graph& g : enumerate_regular(n, d))
        for (int h = 0; h <= d; ++h) {
          if (n * h % 2) continue;
          if (count_regular_spanning_subgraphs(g, h) != count_regular_spanning_subgraphs(g, d - h)) {
            return {false, fmt("mismatch at n=%d d=%d h=%d", n, d, h)};
          }
          ++pairs;
        }
    }
  return {true, fmt("%ld (G,h) pairs", pairs)};
}

Outcome double_counting() {
  int cases = 0;
  for (int n = 2; n <= 7; ++n)
    for (int d1 = 1; d1 < n; ++d1)
      for (int d2 = 1; d1 + d2 <= n - 1; ++d2) {
        const int d3 = n - 1 - d1 - d2;
        if (n * d1 % 2 || n * d2 % 2 || n * d3 % 2) continue;
        const auto profile = subgraph_count_profile(n, d1, d1 + d2);
        BigCount sum = 0;
        for (const auto& c : profile) sum += c;
        // |R_d(K_n)| * E|R_d1| is the profile sum.
        const BigCount parts = count_clique_partitions(n, {d1, d2, d3});
        if (sum != parts) return {false, fmt("n=%d d1=%d d2=%d", n, d1, d2)};
        ++cases;
      }
  return {true, fmt("%d feasible (n,d1,d2)", cases)};
}

constexpr std::uint64_t kBipartiteSeed = 20240601;

Outcome strassen_equivalence() {
  int mismatches = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto d = random_bipartite_constraint({kBipartiteSeed, i}, 12);
    if (min_deficiency(d).eps_star != hall_deficiency_bruteforce(d)) ++mismatches;
  }
  return {mismatches == 0, fmt("%d mismatches / 100", mismatches)};
}

Outcome coupling_validity() {
  int bad = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto d = random_bipartite_constraint({kBipartiteSeed, i}, 12);
    const auto r = min_deficiency(d);
    if (!r.joint.has_uniform_marginals() || r.joint.total() != 1 || r.joint.mass_outside(d) != r.eps_star) ++bad;
  }
  return {bad == 0, fmt("%d invalid couplings / 100", bad)};
}

Outcome sufficient_bound_soundness() {
  int tested = 0, violations = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto d = random_bipartite_constraint({kBipartiteSeed, i}, 12);
    const double eps_star = to_double(min_deficiency(d).eps_star);
    for (double eps : {0.0, 0.05, 0.1, 0.2, 0.3, 0.5}) {
      const auto b = sufficient_bound(d, eps);
      if (!b.applicable || b.bound >= 1) continue;
      ++tested;
      if (eps_star > b.bound + 1e-12) ++violations;
    }
  }
  return {violations == 0 && tested > 0, fmt("%d violations over %d (instance, eps) with bound < 1", violations, tested)};
}

Outcome detq_bands() {
  int dense_in = 0;
  const auto dense = detq_band(24, 16, DetQRegime::dense(2.0 / 3));
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = sample_switching(24, 16, default_switching_steps(24, 16), {71, i}).graph;
    const auto det = determinant(signless_laplacian(g));
    dense_in += det.sign > 0 && dense.contains(det.log_abs);
  }
  int quasi_in = 0;
  double worst_eps = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = find_quasirandom_graph(20, 10, 0.25, {72, i});
    const double eps = quasirandom_epsilon(g);
    worst_eps = std::max(worst_eps, eps);
    if (eps > 0.25) continue;
    const auto det = determinant(signless_laplacian(g));
    quasi_in += det.sign > 0 && detq_band(20, 10, DetQRegime::quasirandom(eps)).contains(det.log_abs);
  }
  return {dense_in == 100 && quasi_in == 100,
          fmt("dense (24,16): %d/100 inside; quasirandom (20,10): %d/100 inside, max eps %.3f", dense_in, quasi_in, worst_eps)};
}

Outcome isserlis_vs_mc() {
  struct Case {
    int n, d, h;
  };
  const std::vector<Case> cases = {{16, 6, 2}, {16, 6, 3}, {16, 8, 3}, {16, 10, 3}, {14, 6, 2},
                                   {14, 5, 2}, {12, 6, 2}, {12, 4, 1}, {10, 6, 2}, {8, 7, 2}};
  int over3 = 0, over4 = 0, used = 0;
  double worst = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [n, d, h] = cases[i];
    const double lambda = static_cast<double>(h) / d;
    for (std::uint64_t attempt = 0;; ++attempt) {
      const Graph g = d == n - 1 ? complete_graph(n) : sample_regular(n, d, SeedSpec{81, i}.child(attempt)).graph;
      IsserlisMoments exact;
      try {
        exact = isserlis_moments(g, lambda);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Singular && attempt < 20) continue;
        throw;
      }
      const auto mc = gaussian_moments_mc(g, lambda, 100000, {82, i});
      for (double z : {z_score(mc.mean_u, exact.exp_u, mc.stderr_u), z_score(mc.mean_v2, exact.exp_v2, mc.stderr_v2)}) {
        worst = std::max(worst, std::abs(z));
        over3 += std::abs(z) > 3;
        over4 += std::abs(z) > 4;
      }
      ++used;
      break;
    }
  }
  return {used == 10 && over3 <= 1 && over4 == 0, fmt("%d graphs, |z|>3: %d of 20, |z|>4: %d, max |z| %.2f", used, over3, over4, worst)};
}

Outcome overlap_law() {
  Graph m4(4);
  m4.add_edge(0, 1);
  m4.add_edge(2, 3);
  const auto pmf = overlap_distribution_exact(m4, m4);
  const bool pmf_ok = pmf.exact == std::map<int, Rational>{{0, Rational(2, 3)}, {2, Rational(1, 3)}};

  int checked = 0, violations = 0;
  for (int h : {1, 2})
    for (int n = h + 2; n <= 8; ++n) {
      if (n * h % 2) continue;
      const auto reps = small_regular_representatives(n, h);
      for (const Graph& a : reps)
        for (const Graph& b : reps) {
          const auto dist = overlap_distribution_exact(a, b);
          for (double alpha : {std::numbers::e, 4.0, 6.0}) {
            const auto t = overlap_tail_bound(h, n, alpha);
            violations += to_double(dist.exact_tail(t.m_alpha)) > t.bound;
            ++checked;
          }
        }
    }

  auto matching = [](int n) { return small_regular_representatives(n, 1).front(); };
  const double tv6 = poisson_tv_distance(overlap_distribution_exact(matching(6), matching(6)), 1);
  const double tv8 = poisson_tv_distance(overlap_distribution_exact(matching(8), matching(8)), 1);
  return {pmf_ok && violations == 0 && tv8 < tv6,
          fmt("pmf(4,1) %s; tail bound %d violations / %d; TV h=1: n=6 %.4f, n=8 %.4f", pmf_ok ? "exact" : "WRONG",
              violations, checked, tv6, tv8)};
}

Outcome formula_consistency() {
  int points = 0, mismatches = 0;
  for (int n = 6; points < 50; n += 3) {
    for (int d1 = 1; d1 <= 3 && points < 50; ++d1) {
      const int d2 = 1 + (n + d1) % (n - 1 - d1);
      if (d1 + d2 > n - 1) continue;
      mismatches += conjecture2_estimate(n, d1, d2).log_value != rhat(n, d1, d1 + d2).log_value;
      const int h = 1 + (n * d1) % (n - 2);
      mismatches += hm_partition_estimate(n, {h, n - 1 - h}).log_value != rhat(n, h, n - 1).log_value;
      ++points;
    }
  }
  return {mismatches == 0, fmt("%d mismatches over %d sweep points", mismatches, points)};
}

Outcome convergence_trends() {
  std::string detail = "rhat/(n-1)!! - 1:";
  double previous = INFINITY;
  bool monotone = true;
  for (int n : {8, 10, 12, 14}) {
    const double exact = double_factorial_odd(n).convert_to<double>();
    const double err = std::abs(rhat(n, 1, n - 1).value() / exact - 1);
    detail += fmt(" n=%d %.3e", n, err);
    monotone = monotone && err < previous;
    previous = err;
  }
  std::map<int, double> t5;
  for (int n : {8, 12}) {
    const Graph k = complete_graph(n);
    t5[n] = theorem5_count(k, 2).value() / count_regular_spanning_subgraphs(k, 2).convert_to<double>();
  }
  const bool improves = std::abs(t5[12] - 1) < std::abs(t5[8] - 1);
  detail += fmt("; theorem5(K_n,2)/exact: n=8 %.5f, n=12 %.5f", t5[8], t5[12]);
  return {monotone && improves, detail};
}

Outcome sampler_uniformity() {
  const auto support = enumerate_regular(6, 3);
  std::map<Graph, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
  std::vector<double> observed(support.size(), 0);
  const std::uint64_t samples = 70000;
  for (std::uint64_t i = 0; i < samples; ++i) observed[index.at(sample_pairing(6, 3, {91, i}).graph)] += 1;
  const double expected = static_cast<double>(samples) / support.size();
  double chi2 = 0;
  for (double o : observed) chi2 += (o - expected) * (o - expected) / expected;
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(support.size() - 1.0), chi2));
  const auto coupling = build_sprinkling_coupling(4, 1, 1);
  return {support.size() == 70 && p > 0.001 && coupling.eps_star == 0,
          fmt("support %zu, chi2 %.1f, p %.4f; eps_star(4,1,1) = %s", support.size(), chi2, p,
              to_string(coupling.eps_star).c_str())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact matching counts", 1, matching_counts},
      {2, "complement symmetry", 60, complement_symmetry},
      {3, "double-counting identity", 300, double_counting},
      {4, "max-flow deficiency equals Hall brute force", 60, strassen_equivalence},
      {5, "coupling validity", 60, coupling_validity},
      {6, "sufficient-condition bound soundness", 60, sufficient_bound_soundness},
      {7, "det Q bands", 120, detq_bands},
      {8, "Isserlis moments vs Monte Carlo", 120, isserlis_vs_mc},
      {9, "overlap law", 120, overlap_law},
      {10, "formula consistency", 1, formula_consistency},
      {11, "convergence trends", 60, convergence_trends},
      {12, "sampler uniformity and (4,1,1) coupling", 60, sampler_uniformity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%.2fs / %.0fs budget%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
