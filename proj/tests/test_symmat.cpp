#include <gtest/gtest.h>

#include <cmath>

#include "regglab/bigint.hpp"
#include "regglab/graph.hpp"
#include "regglab/rng.hpp"
#include "regglab/sampler.hpp"
#include "regglab/symmat.hpp"

using namespace regglab;

namespace {

// Exact Gauss-Jordan over the rationals; independent of the floating-point path.
std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (a[p][k] == 0) ++p;
    std::swap(a[p], a[k]);
    std::swap(inv[p], inv[k]);
    const Rational piv = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= piv;
      inv[k][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

SymmetricMatrix random_spd(int n, CounterRng& rng) {
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, n + rng.uniform());
    for (int j = i + 1; j < n; ++j) m.set(i, j, 2 * rng.uniform() - 1);
  }
  return m;
}

}  // namespace

TEST(Eigenvalues, KnownSpectra) {
  auto k4 = eigenvalues(adjacency_matrix(complete_graph(4)).scaled(1.0 / 3));
  ASSERT_EQ(k4.values.size(), 4u);
  EXPECT_NEAR(k4.values[0], 1.0, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(k4.values[i], -1.0 / 3, 1e-12);

  auto c4 = eigenvalues(adjacency_matrix(cycle_graph(4)).scaled(0.5));
  const double expect[] = {1, 0, 0, -1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(c4.values[i], expect[i], 1e-12);

  auto id = eigenvalues(SymmetricMatrix::identity(6));
  for (double x : id.values) EXPECT_EQ(x, 1.0);
}

TEST(Eigenvalues, SortedWithSmallResidualAndTrace) {
  CounterRng rng({4, 0});
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + rng.below(40);
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
    auto s = eigenvalues(m);
    EXPECT_TRUE(std::is_sorted(s.values.rbegin(), s.values.rend()));
    EXPECT_LT(s.basis_residual, 1e-9 * (1 + m.frobenius_norm()));
    double sum = 0;
    for (double x : s.values) sum += x;
    EXPECT_NEAR(sum, m.trace(), n * 1e-10);
  }
}

TEST(Eigenvalues, RejectsNonPositiveTolerance) {
  try {
    eigenvalues(SymmetricMatrix::identity(2), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Eigenvalues, NoConvergenceWhenSweepsExhausted) {
  SymmetricMatrix m(3);
  m.set(0, 1, 1.0);
  m.set(1, 2, 2.0);
  try {
    eigen_decompose(m, 1e-12, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

// Closed-walk counts: the non-trivial eigenvalues of A/d sum to -1 and their
// squares sum to n/d - 1.
TEST(Eigenvalues, TraceIdentitiesOnRegularGraphs) {
  int checked = 0;
  for (auto [n, d] : {std::pair{10, 3}, {12, 4}, {16, 5}, {20, 9}, {24, 16}}) {
    for (std::uint64_t s = 0; s < 10; ++s, ++checked) {
      auto g = sample_switching(n, d, default_switching_steps(n, d), {21, s}).graph;
      auto chi = eigenvalues(adjacency_matrix(g).scaled(1.0 / d)).values;
      EXPECT_NEAR(chi[0], 1.0, 1e-10);
      double s1 = 0, s2 = 0;
      for (std::size_t i = 1; i < chi.size(); ++i) {
        s1 += chi[i];
        s2 += chi[i] * chi[i];
      }
      EXPECT_NEAR(s1, -1.0, 1e-8);
      EXPECT_NEAR(s2, static_cast<double>(n) / d - 1, 1e-8);
    }
  }
  EXPECT_EQ(checked, 50);
}

TEST(Determinant, KnownValues) {
  auto k4 = determinant(signless_laplacian(complete_graph(4)));
  EXPECT_EQ(k4.sign, 1);
  EXPECT_NEAR(k4.log_abs, std::log(48.0), 1e-12);

  EXPECT_EQ(determinant(signless_laplacian(cycle_graph(4))).sign, 0);

  auto id = determinant(SymmetricMatrix::identity(7));
  EXPECT_EQ(id.sign, 1);
  EXPECT_EQ(id.log_abs, 0.0);

  SymmetricMatrix swap(2);
  swap.set(0, 1, 1.0);
  auto ds = determinant(swap);
  EXPECT_EQ(ds.sign, -1);
  EXPECT_NEAR(ds.log_abs, 0.0, 1e-15);
}

TEST(Determinant, AgreesWithEigenvalueProduct) {
  CounterRng rng({8, 0});
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + rng.below(30);
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
    auto det = determinant(m);
    if (det.sign == 0) continue;
    int sign = 1;
    double log_abs = 0;
    for (double x : eigenvalues(m).values) {
      if (x < 0) sign = -sign;
      log_abs += std::log(std::abs(x));
    }
    EXPECT_EQ(det.sign, sign);
    EXPECT_NEAR(det.log_abs, log_abs, 1e-8 * std::max(1.0, std::abs(log_abs)));
  }
}

TEST(Determinant, SurvivesHugeMagnitudes) {
  auto g = sample_switching(60, 40, default_switching_steps(60, 40), {1, 1}).graph;
  auto det = determinant(signless_laplacian(g));
  EXPECT_EQ(det.sign, 1);
  EXPECT_TRUE(std::isfinite(det.log_abs));
  // log det Q sits near log 2 + n log d - 1/2 - n/(2d) for dense regular graphs.
  EXPECT_NEAR(det.log_abs, std::log(2.0) + 60 * std::log(40.0) - 0.5 - 60.0 / 80, 0.5);
}

TEST(Inverse, SignlessLaplacianOfK4) {
  auto q = signless_laplacian(complete_graph(4));
  std::vector<std::vector<Rational>> exact(4, std::vector<Rational>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) exact[i][j] = static_cast<int>(q(i, j));
  auto oracle = rational_inverse(exact);
  auto inv = inverse(q);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(inv(i, j), to_double(oracle[i][j]), 1e-14);
  EXPECT_LT(max_abs_diff_from_identity(multiply(q, inv)), 1e-9 * 4);
}

TEST(Inverse, ScaledIdentityAndSingular) {
  auto half = inverse(SymmetricMatrix::identity(5, 2.0));
  EXPECT_EQ(half, SymmetricMatrix::identity(5, 0.5));
  try {
    inverse(signless_laplacian(cycle_graph(4)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Inverse, InvolutionOnWellConditionedMatrices) {
  CounterRng rng({12, 0});
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + rng.below(40);
    auto m = random_spd(n, rng);
    auto inv = inverse(m);
    EXPECT_LT(max_abs_diff_from_identity(multiply(m, inv)), 1e-9 * n);
    EXPECT_LT(max_abs_diff(inverse(inv), m), 1e-7 * n);
  }
}

TEST(Cholesky, ReproducesMatrix) {
  CounterRng rng({13, 0});
  auto m = random_spd(12, rng);
  auto l = cholesky(m);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      double s = 0;
      for (int k = 0; k < 12; ++k) s += l(i, k) * l(j, k);
      EXPECT_NEAR(s, m(i, j), 1e-12 * 12);
    }
}
