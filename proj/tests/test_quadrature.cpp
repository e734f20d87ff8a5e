// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <specmap/orthopoly.hpp>
#include <specmap/quadrature.hpp>
#include <specmap/types.hpp>

#include "oracles.hpp"

using namespace specmap;

TEST_CASE("legendre recurrence coefficients match the classical values")
{
  const RecurrenceCoefficients rec = JacobiRecurrence(10, 0.0);
  CHECK(rec.beta[0] == doctest::Approx(2.0).epsilon(1e-15));
  for (int k = 0; k < 10; k++)
  {
    CHECK(std::abs(rec.alpha[k]) < 1e-15);
  }
  for (int k = 1; k <= 10; k++)
  {
    const double expected = k * k / (4.0 * k * k - 1.0);
    CHECK(rec.beta[k] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("orthonormal legendre values match closed forms")
{
  const RecurrenceCoefficients rec = JacobiRecurrence(6, 0.0);
  for (double t : {-0.9, -0.3, 0.0, 0.42, 0.77, 1.0})
  {
    double p[7], dp[7];
    EvaluateOrthonormal(rec, 6, t, p, dp);
    CHECK(p[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(std::sqrt(1.5) * t).epsilon(1e-14));
    CHECK(p[2] == doctest::Approx(std::sqrt(2.5) * 0.5 * (3 * t * t - 1)).epsilon(1e-13));
    CHECK(dp[0] == doctest::Approx(0.0));
    CHECK(dp[1] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
    CHECK(dp[2] == doctest::Approx(std::sqrt(2.5) * 3.0 * t).epsilon(1e-13));
  }
}

TEST_CASE("orthonormal family is orthonormal under its weight (independent Simpson)")
{
  for (double b : {0.0, 2.0, 2.5, 5.5})
  {
    const RecurrenceCoefficients rec = JacobiRecurrence(6, b);
    for (int i = 0; i <= 5; i++)
    {
      for (int j = 0; j <= i; j++)
      {
        const double val = oracle::Simpson(
            [&](double t) {
              double p[7];
              EvaluateOrthonormal(rec, 6, t, p);
              return p[i] * p[j] * std::pow(1.0 + t, b);
            },
            -1.0, 1.0, 40000);
        CHECK(val == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("derivatives from the recurrence agree with finite differences")
{
  const RecurrenceCoefficients rec = JacobiRecurrence(8, 1.5);
  for (double t : {-0.8, -0.1, 0.55, 0.9})
  {
    double p[9], dp[9], pl[9], pr[9];
    EvaluateOrthonormal(rec, 8, t, p, dp);
    const double h = 1e-6;
    EvaluateOrthonormal(rec, 8, t - h, pl);
    EvaluateOrthonormal(rec, 8, t + h, pr);
    for (int i = 0; i <= 8; i++)
    {
      CHECK(dp[i] == doctest::Approx((pr[i] - pl[i]) / (2 * h)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("gauss-legendre nodes and weights match published tables")
{
  const GaussRule g1 = GaussLegendre(1);
  CHECK(g1.nodes[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(g1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const GaussRule g2 = GaussLegendre(2);
  CHECK(g2.nodes[0] == doctest::Approx(-0.57735026918962576).epsilon(1e-14));
  CHECK(g2.nodes[1] == doctest::Approx(0.57735026918962576).epsilon(1e-14));
  CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  const GaussRule g3 = GaussLegendre(3);
  CHECK(g3.nodes[0] == doctest::Approx(-0.77459666924148338).epsilon(1e-14));
  CHECK(g3.nodes[1] == doctest::Approx(0.0).scale(1.0));
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(g3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));

  const GaussRule g5 = GaussLegendre(5);
  CHECK(g5.nodes[0] == doctest::Approx(-0.90617984593866399).epsilon(1e-14));
  CHECK(g5.nodes[1] == doctest::Approx(-0.53846931010568309).epsilon(1e-14));
  CHECK(g5.weights[0] == doctest::Approx(0.23692688505618909).epsilon(1e-13));
  CHECK(g5.weights[1] == doctest::Approx(0.47862867049936647).epsilon(1e-13));
  CHECK(g5.weights[2] == doctest::Approx(0.56888888888888889).epsilon(1e-13));
}

TEST_CASE("gauss-legendre is exact to degree 2q-1")
{
  for (int q = 1; q <= 10; q++)
  {
    const GaussRule g = GaussLegendre(q);
    REQUIRE(g.nodes.size() == q);
    for (int p = 0; p <= 2 * q - 1; p++)
    {
      double s = 0.0;
      for (int i = 0; i < q; i++)
      {
        s += g.weights[i] * std::pow(g.nodes[i], p);
      }
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("radial (1+t)^2 gauss rule is exact and well formed")
{
  for (int q = 1; q <= 8; q++)
  {
    const GaussRule g = GaussRadialSquared(q);
    REQUIRE(g.nodes.size() == q);
    for (int i = 0; i < q; i++)
    {
      CHECK(g.nodes[i] > -1.0);
      CHECK(g.nodes[i] < 1.0);
      CHECK(g.weights[i] > 0.0);
      if (i > 0)
      {
        CHECK(g.nodes[i] > g.nodes[i - 1]);
      }
    }
    for (int p = 0; p <= 2 * q - 1; p++)
    {
      double s = 0.0;
      for (int i = 0; i < q; i++)
      {
        s += g.weights[i] * std::pow(g.nodes[i], p);
      }
      CHECK(s == doctest::Approx(oracle::RadialSquaredMoment(p)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("general weighted gauss rules integrate moments exactly")
{
  for (double mu : {0.5, 2.5, 4.5})
  {
    for (int q = 2; q <= 6; q++)
    {
      const RecurrenceCoefficients rec = JacobiRecurrence(q + 1, mu);
      const GaussRule g = GaussFromRecurrence(rec, q);
      for (int p = 0; p <= 2 * q - 1; p++)
      {
        double s = 0.0;
        for (int i = 0; i < q; i++)
        {
          s += g.weights[i] * std::pow(g.nodes[i], p);
        }
        CHECK(s == doctest::Approx(oracle::WeightedMoment(mu, p)).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("disk rule: shape, positivity, and exactness to total degree 2q")
{
  for (int q = 1; q <= 6; q++)
  {
    const QuadratureRule rule = DiskRule(q);
    CHECK(rule.domain == ReferenceDomain::Disk);
    CHECK(rule.Dim() == 2);
    CHECK(rule.Count() == (q + 1) * (2 * q + 1));
    double wsum = 0.0;
    for (int i = 0; i < rule.Count(); i++)
    {
      CHECK(rule.Node(i).norm() < 1.0);
      CHECK(rule.weights[i] > 0.0);
      wsum += rule.weights[i];
    }
    const double pi = 3.14159265358979323846;
    CHECK(wsum == doctest::Approx(pi).epsilon(1e-14));

    for (int deg = 0; deg <= 2 * q; deg++)
    {
      for (int i = 0; i <= deg; i++)
      {
        const int j = deg - i;
        double s = 0.0;
        for (int node = 0; node < rule.Count(); node++)
        {
          s += rule.weights[node] *
               std::pow(rule.nodes(0, node), i) * std::pow(rule.nodes(1, node), j);
        }
        CHECK(s == doctest::Approx(oracle::DiskMonomialIntegral(i, j))
                       .epsilon(1e-13)
                       .scale(1.0));
      }
    }
  }
}

TEST_CASE("disk rule is not exact beyond its stated degree")
{
  const QuadratureRule rule = DiskRule(2);
  double s = 0.0;
  for (int node = 0; node < rule.Count(); node++)
  {
    s += rule.weights[node] * std::pow(rule.nodes(0, node), 6);
  }
  CHECK(std::abs(s - oracle::DiskMonomialIntegral(6, 0)) > 1e-6);
}

TEST_CASE("ball rule: shape, positivity, and exactness to total degree 2q-1")
{
  for (int q = 1; q <= 5; q++)
  {
    const QuadratureRule rule = BallRule(q);
    CHECK(rule.domain == ReferenceDomain::Ball);
    CHECK(rule.Dim() == 3);
    CHECK(rule.Count() == 2 * q * q * q);
    double wsum = 0.0;
    for (int i = 0; i < rule.Count(); i++)
    {
      CHECK(rule.Node(i).norm() < 1.0);
      CHECK(rule.weights[i] > 0.0);
      wsum += rule.weights[i];
    }
    CHECK(wsum == doctest::Approx(oracle::BallMonomialIntegral(0, 0, 0)).epsilon(1e-14));

    for (int deg = 0; deg <= 2 * q - 1; deg++)
    {
      for (int i = 0; i <= deg; i++)
      {
        for (int j = 0; i + j <= deg; j++)
        {
          const int k = deg - i - j;
          double s = 0.0;
          for (int node = 0; node < rule.Count(); node++)
          {
            s += rule.weights[node] * std::pow(rule.nodes(0, node), i) *
                 std::pow(rule.nodes(1, node), j) * std::pow(rule.nodes(2, node), k);
          }
          CHECK(s == doctest::Approx(oracle::BallMonomialIntegral(i, j, k))
                         .epsilon(1e-13)
                         .scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("ball rule is not exact beyond its stated degree")
{
  const QuadratureRule rule = BallRule(3);
  double s = 0.0;
  for (int node = 0; node < rule.Count(); node++)
  {
    s += rule.weights[node] * std::pow(rule.nodes(2, node), 6);
  }
  CHECK(std::abs(s - oracle::BallMonomialIntegral(0, 0, 6)) > 1e-6);
}

TEST_CASE("quadrature rule construction rejects non-positive orders")
{
  CHECK_THROWS_AS(DiskRule(0), QuadratureError);
  CHECK_THROWS_AS(BallRule(0), QuadratureError);
  CHECK_THROWS_AS(DiskRule(-2), QuadratureError);
}

TEST_CASE("pairwise sum matches long-double accumulation and is deterministic")
{
  std::mt19937 gen(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(100000);
  long double exact = 0.0L;
  for (double &x : v)
  {
    x = dist(gen);
    exact += x;
  }
  const double s1 = PairwiseSum(v.data(), static_cast<int>(v.size()));
  const double s2 = PairwiseSum(v.data(), static_cast<int>(v.size()));
  CHECK(s1 == s2);
  CHECK(s1 == doctest::Approx(static_cast<double>(exact)).epsilon(1e-13).scale(1.0));

  std::vector<double> ones(1000, 0.125);
  CHECK(PairwiseSum(ones.data(), 1000) == 125.0);
  CHECK(PairwiseSum(ones.data(), 0) == 0.0);
}

TEST_CASE("integrate sums f over the rule and rejects non-finite values")
{
  const QuadratureRule rule = DiskRule(4);
  const double pi = 3.14159265358979323846;
  const double one = Integrate(rule, [](Eigen::Ref<const Vector>) { return 1.0; });
  CHECK(one == doctest::Approx(pi).epsilon(1e-14));

  const double sq = Integrate(rule, [](Eigen::Ref<const Vector> x) {
    return x[0] * x[0] + x[1] * x[1];
  });
  CHECK(sq == doctest::Approx(pi / 2.0).epsilon(1e-13));

  CHECK_THROWS_AS(Integrate(rule,
                            [](Eigen::Ref<const Vector>) {
                              return std::numeric_limits<double>::quiet_NaN();
                            }),
                  QuadratureError);
}
