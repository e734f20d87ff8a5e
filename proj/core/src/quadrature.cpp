// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "specmap/orthopoly.hpp"

namespace specmap
{

using std::numbers::pi;

QuadratureRule DiskRule(int q)
{
  if (q < 1)
  {
    throw QuadratureError("disk rule requires q >= 1");
  }
  GaussRule radial = GaussLegendre(q + 1);
  int na = 2 * q + 1;
  QuadratureRule rule;
  rule.domain = ReferenceDomain::Disk;
  rule.order = q;
  rule.nodes.resize(2, (q + 1) * na);
  rule.weights.resize((q + 1) * na);
  int idx = 0;
  for (int l = 0; l <= q; l++)
  {
    double r = 0.5 * (radial.nodes[l] + 1.0);
    double wr = 0.5 * radial.weights[l];
    for (int m = 0; m < na; m++)
    {
      double angle = 2.0 * pi * m / na;
      rule.nodes(0, idx) = r * std::cos(angle);
      rule.nodes(1, idx) = r * std::sin(angle);
      rule.weights[idx] = wr * (2.0 * pi / na) * r;
      idx++;
    }
  }
  return rule;
}

QuadratureRule BallRule(int q)
{
  if (q < 1)
  {
    throw QuadratureError("ball rule requires q >= 1");
  }
  GaussRule polar = GaussLegendre(q);
  GaussRule radial = GaussRadialSquared(q);
  QuadratureRule rule;
  rule.domain = ReferenceDomain::Ball;
  rule.order = q;
  rule.nodes.resize(3, 2 * q * q * q);
  rule.weights.resize(2 * q * q * q);
  int idx = 0;
  for (int i = 1; i <= 2 * q; i++)
  {
    double azimuth = pi * i / q;
    double ca = std::cos(azimuth), sa = std::sin(azimuth);
    for (int j = 0; j < q; j++)
    {
      double ct = polar.nodes[j];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < q; k++)
      {
        double r = 0.5 * (radial.nodes[k] + 1.0);
        double w = (pi / q) * polar.weights[j] * (radial.weights[k] / 8.0);
        rule.nodes(0, idx) = r * st * ca;
        rule.nodes(1, idx) = r * st * sa;
        rule.nodes(2, idx) = r * ct;
        rule.weights[idx] = w;
        idx++;
      }
    }
  }
  return rule;
}

double PairwiseSum(const double *v, int n)
{
  if (n <= 8)
  {
    double s = 0.0;
    for (int i = 0; i < n; i++)
    {
      s += v[i];
    }
    return s;
  }
  int half = n / 2;
  return PairwiseSum(v, half) + PairwiseSum(v + half, n - half);
}

double Integrate(const QuadratureRule &rule,
                 const std::function<double(Eigen::Ref<const Vector>)> &f)
{
  int n = rule.Count();
  std::vector<double> terms(n);
  for (int i = 0; i < n; i++)
  {
    double fx = f(rule.Node(i));
    if (!std::isfinite(fx))
    {
      throw QuadratureError("integrand is not finite at node " + std::to_string(i));
    }
    terms[i] = rule.weights[i] * fx;
  }
  return PairwiseSum(terms.data(), n);
}

}  // namespace specmap
