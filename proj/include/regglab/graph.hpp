#pragma once

// Labelled simple graphs on [n] = {0, ..., n-1} stored as rows of 64-bit words.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regglab/errors.hpp"
#include "regglab/symmat.hpp"

namespace regglab {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

struct DegreeSequence {
  std::vector<int> h;

  int sum() const { return std::accumulate(h.begin(), h.end(), 0); }

  // Even sum and every entry in [0, n-1].
  bool valid() const {
    const int n = static_cast<int>(h.size());
    for (int x : h) {
      if (x < 0 || x > n - 1) return false;
    }
    return sum() % 2 == 0;
  }
};

struct RegularityCertificate {
  int degree = 0;
  bool valid = false;
};

class Graph {
 public:
  explicit Graph(int n = 1) : n_(n), words_(words_for(n)), bits_(static_cast<std::size_t>(n) * words_, 0) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "graph needs n >= 1, got " + std::to_string(n));
  }

  /// Validating constructor: every pair must satisfy 0 <= u, v < n, u != v, and appear once.
  static Graph from_edge_list(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        fail(ErrorCode::VertexOutOfRange,
             "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" + std::to_string(n));
      }
      if (u == v) fail(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(u));
      if (g.has_edge(u, v)) {
        fail(ErrorCode::DuplicateEdge, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
      }
      g.add_edge(u, v);
    }
    return g;
  }
  static Graph from_edge_list(int n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int words_per_row() const noexcept { return words_; }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return (bits_[index(u, v)] >> (v & 63)) & 1u;
  }

  // Unchecked mutators; callers keep u != v and in range. Used while a graph is being built.
  void add_edge(Vertex u, Vertex v) noexcept {
    if (has_edge(u, v)) return;
    bits_[index(u, v)] |= bit(v);
    bits_[index(v, u)] |= bit(u);
    ++m_;
  }
  void remove_edge(Vertex u, Vertex v) noexcept {
    if (!has_edge(u, v)) return;
    bits_[index(u, v)] &= ~bit(v);
    bits_[index(v, u)] &= ~bit(u);
    --m_;
  }

  std::span<const std::uint64_t> row(Vertex v) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  /// Single-word row; only meaningful when n <= 64.
  std::uint64_t row_word(Vertex v) const noexcept { return bits_[static_cast<std::size_t>(v) * words_]; }

  int degree(Vertex v) const noexcept {
    int d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
  }

  DegreeSequence degrees() const {
    DegreeSequence s;
    s.h.resize(n_);
    for (Vertex v = 0; v < n_; ++v) s.h[v] = degree(v);
    return s;
  }

  int min_degree() const {
    int d = n_;
    for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return d;
  }

  RegularityCertificate regularity() const {
    RegularityCertificate c;
    c.degree = degree(0);
    c.valid = true;
    for (Vertex v = 1; v < n_ && c.valid; ++v) c.valid = degree(v) == c.degree;
    return c;
  }

  bool is_regular(int d) const {
    auto c = regularity();
    return c.valid && c.degree == d;
  }

  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    out.reserve(degree(v));
    auto r = row(v);
    for (int w = 0; w < words_; ++w) {
      for (std::uint64_t x = r[w]; x; x &= x - 1) out.push_back(w * 64 + std::countr_zero(x));
    }
    return out;
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : neighbours(u)) {
        if (v > u) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

  friend bool operator<(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.edges() < b.edges();
  }

 private:
  static int words_for(int n) { return n < 1 ? 1 : (n + 63) / 64; }
  std::size_t index(Vertex u, Vertex v) const noexcept {
    return static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v >> 6);
  }
  static std::uint64_t bit(Vertex v) noexcept { return std::uint64_t{1} << (v & 63); }

  int n_;
  int words_;
  int m_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline Graph complete_graph(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// Vertex-disjoint union of cycles on consecutive labels; lengths must be >= 3.
inline Graph cycle_union(std::span<const int> lengths) {
  int n = std::accumulate(lengths.begin(), lengths.end(), 0);
  Graph g(std::max(n, 1));
  int start = 0;
  for (int len : lengths) {
    if (len < 3) fail(ErrorCode::InvalidArgument, "cycle length must be >= 3");
    for (int i = 0; i < len; ++i) g.add_edge(start + i, start + (i + 1) % len);
    start += len;
  }
  return g;
}
inline Graph cycle_graph(int n) {
  const int len[] = {n};
  return cycle_union(len);
}

inline Graph complement(const Graph& g) {
  Graph c(g.n());
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

inline void require_same_order(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) {
    fail(ErrorCode::SizeMismatch, "graphs on " + std::to_string(a.n()) + " and " + std::to_string(b.n()) + " vertices");
  }
}

inline int intersection_size(const Graph& a, const Graph& b) {
  require_same_order(a, b);
  int twice = 0;
  for (Vertex v = 0; v < a.n(); ++v) {
    auto ra = a.row(v);
    auto rb = b.row(v);
    for (std::size_t w = 0; w < ra.size(); ++w) twice += std::popcount(ra[w] & rb[w]);
  }
  return twice / 2;
}

inline Graph union_disjoint(const Graph& a, const Graph& b) {
  require_same_order(a, b);
  Graph u = a;
  for (auto [x, y] : b.edges()) {
    if (a.has_edge(x, y)) {
      fail(ErrorCode::OverlappingEdges, "edge (" + std::to_string(x) + "," + std::to_string(y) + ") in both graphs");
    }
    u.add_edge(x, y);
  }
  return u;
}

/// Edges of `a` that are not in `b`.
inline Graph difference(const Graph& a, const Graph& b) {
  require_same_order(a, b);
  Graph out(a.n());
  for (auto [x, y] : a.edges())
    if (!b.has_edge(x, y)) out.add_edge(x, y);
  return out;
}

inline int common_neighbours(const Graph& g, Vertex j, Vertex k) {
  auto rj = g.row(j);
  auto rk = g.row(k);
  int c = 0;
  for (std::size_t w = 0; w < rj.size(); ++w) c += std::popcount(rj[w] & rk[w]);
  return c;
}

struct CommonNeighbourRange {
  int min = 0;
  int max = 0;
};

/// Extremes of |N(j) ∩ N(k)| over unordered pairs of distinct vertices.
inline CommonNeighbourRange common_neighbour_range(const Graph& g) {
  if (g.n() < 2) fail(ErrorCode::InvalidArgument, "common_neighbour_range needs n >= 2");
  CommonNeighbourRange r{g.n(), 0};
  for (Vertex j = 0; j < g.n(); ++j) {
    for (Vertex k = j + 1; k < g.n(); ++k) {
      int c = common_neighbours(g, j, k);
      r.min = std::min(r.min, c);
      r.max = std::max(r.max, c);
    }
  }
  return r;
}

/// Q = D + A, so that x^T Q x = sum over edges jk of (x_j + x_k)^2.
inline SymmetricMatrix signless_laplacian(const Graph& g) {
  SymmetricMatrix q(g.n());
  for (Vertex v = 0; v < g.n(); ++v) q.set(v, v, g.degree(v));
  for (auto [u, v] : g.edges()) q.set(u, v, 1.0);
  return q;
}

inline SymmetricMatrix adjacency_matrix(const Graph& g) {
  SymmetricMatrix a(g.n());
  for (auto [u, v] : g.edges()) a.set(u, v, 1.0);
  return a;
}

inline bool is_permutation_of_range(std::span<const Vertex> perm) {
  std::vector<char> seen(perm.size(), 0);
  for (Vertex p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

/// Edge uv becomes perm[u] perm[v].
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.n() || !is_permutation_of_range(perm)) {
    fail(ErrorCode::NotAPermutation, "relabel needs a bijection on [" + std::to_string(g.n()) + "]");
  }
  Graph out(g.n());
  for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
  return out;
}

}  // namespace regglab
