#pragma once

// Backtracking over spanning subgraphs of a host graph with a prescribed degree
// at every vertex. Vertices are processed in label order; at vertex v the
// remaining demand is met by a set of higher-labelled host neighbours with
// residual capacity, chosen in lexicographic order. Leaves are therefore
// produced in lexicographic order of their sorted edge lists.

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regglab/errors.hpp"
#include "regglab/graph.hpp"

namespace regglab::detail {

class DegreeConstrainedSearch {
 public:
  DegreeConstrainedSearch(const Graph& host, const std::vector<int>& target)
      : n_(host.n()), host_(n_), residual_(target), chosen_(n_, 0) {
    if (n_ > 64) fail(ErrorCode::TooLarge, "exact subgraph search supports n <= 64, got " + std::to_string(n_));
    if (static_cast<int>(target.size()) != n_) fail(ErrorCode::SizeMismatch, "degree target length differs from n");
    for (Vertex v = 0; v < n_; ++v) {
      host_[v] = host.row_word(v);
      if (residual_[v] < 0) fail(ErrorCode::InvalidArgument, "negative degree target");
      if (residual_[v] > 0) active_ |= bit(v);
    }
  }

  /// Number of subgraphs meeting the targets.
  std::uint64_t count() {
    leaves_ = 0;
    emit_ = false;
    if (feasible_after(-1)) process(0);
    return leaves_;
  }

  /// Calls visit(rows) for every subgraph; rows[v] is the neighbour mask of v.
  template <class Visit>
  void for_each(Visit&& visit) {
    leaves_ = 0;
    emit_ = true;
    visit_ = [&visit](const std::vector<std::uint64_t>& rows) { visit(rows); };
    if (feasible_after(-1)) process(0);
    visit_ = nullptr;
  }

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }
  static std::uint64_t above(int v) { return v >= 63 ? 0 : (~std::uint64_t{0} << (v + 1)); }

  void process(int v) {
    while (v < n_ && residual_[v] == 0) ++v;
    if (v == n_) {
      ++leaves_;
      if (emit_) visit_(chosen_);
      return;
    }
    const std::uint64_t cand = host_[v] & above(v) & active_;
    const int need = residual_[v];
    if (std::popcount(cand) < need) return;
    choose(v, cand, need);
  }

  void choose(int v, std::uint64_t cand, int need) {
    if (need == 0) {
      if (feasible_after(v)) process(v + 1);
      return;
    }
    const int w = std::countr_zero(cand);
    const std::uint64_t rest = cand & (cand - 1);
    take(v, w);
    choose(v, rest, need - 1);
    untake(v, w);
    if (std::popcount(rest) >= need) choose(v, rest, need);
  }

  void take(int v, int w) {
    --residual_[v];
    --residual_[w];
    if (residual_[v] == 0) active_ &= ~bit(v);
    if (residual_[w] == 0) active_ &= ~bit(w);
    if (emit_) {
      chosen_[v] |= bit(w);
      chosen_[w] |= bit(v);
    }
  }

  void untake(int v, int w) {
    ++residual_[v];
    ++residual_[w];
    active_ |= bit(v) | bit(w);
    if (emit_) {
      chosen_[v] &= ~bit(w);
      chosen_[w] &= ~bit(v);
    }
  }

  // After vertex v is settled, every later vertex must still be able to reach
  // its target using host edges to other later vertices, and the remaining
  // demand must be even.
  bool feasible_after(int v) const {
    const std::uint64_t later = v < 0 ? ~std::uint64_t{0} : above(v);
    int demand = 0;
    for (std::uint64_t s = active_ & later; s; s &= s - 1) {
      const int w = std::countr_zero(s);
      const int r = residual_[w];
      demand += r;
      if (std::popcount(host_[w] & later & active_) < r) return false;
    }
    return demand % 2 == 0;
  }

  int n_;
  std::vector<std::uint64_t> host_;
  std::vector<int> residual_;
  std::vector<std::uint64_t> chosen_;
  std::uint64_t active_ = 0;
  std::uint64_t leaves_ = 0;
  bool emit_ = false;
  std::function<void(const std::vector<std::uint64_t>&)> visit_;
};

inline Graph graph_from_rows(int n, const std::vector<std::uint64_t>& rows) {
  Graph g(n);
  for (int v = 0; v < n; ++v)
    for (std::uint64_t s = rows[v] & (v >= 63 ? 0 : (~std::uint64_t{0} << (v + 1))); s; s &= s - 1)
      g.add_edge(v, std::countr_zero(s));
  return g;
}

/// Perfect matchings of the graph whose rows are `adj`, restricted to `unmatched`.
inline std::uint64_t count_perfect_matchings(const std::vector<std::uint64_t>& adj, std::uint64_t unmatched) {
  if (unmatched == 0) return 1;
  const int v = std::countr_zero(unmatched);
  const std::uint64_t rest = unmatched & ~(std::uint64_t{1} << v);
  std::uint64_t total = 0;
  for (std::uint64_t s = adj[v] & rest; s; s &= s - 1) {
    const int w = std::countr_zero(s);
    total += count_perfect_matchings(adj, rest & ~(std::uint64_t{1} << w));
  }
  return total;
}

}  // namespace regglab::detail
