// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/orthopoly.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace specmap
{

RecurrenceCoefficients JacobiRecurrence(int count, double b)
{
  if (count < 0 || b <= -1.0)
  {
    throw Error("invalid recurrence request");
  }
  RecurrenceCoefficients rec;
  rec.exponent = b;
  rec.alpha.resize(count + 1);
  rec.beta.resize(count + 2);
  rec.beta[0] = std::pow(2.0, b + 1.0) / (b + 1.0);
  if (count + 1 > 0)
  {
    rec.alpha[0] = b / (b + 2.0);
  }
  for (int k = 1; k <= count; k++)
  {
    double s = 2.0 * k + b;
    rec.alpha[k] = b * b / (s * (s + 2.0));
  }
  for (int k = 1; k <= count + 1; k++)
  {
    double s = 2.0 * k + b;
    double num = 4.0 * k * k * (k + b) * (k + b);
    rec.beta[k] = num / (s * s * (s + 1.0) * (s - 1.0));
  }
  return rec;
}

void EvaluateOrthonormal(const RecurrenceCoefficients &rec, int degree, double t,
                         double *values, double *derivatives)
{
  double pm1 = 0.0, p = 1.0 / std::sqrt(rec.beta[0]);
  double dm1 = 0.0, d = 0.0;
  values[0] = p;
  if (derivatives)
  {
    derivatives[0] = 0.0;
  }
  for (int k = 0; k < degree; k++)
  {
    double inv = 1.0 / std::sqrt(rec.beta[k + 1]);
    double pk1 = ((t - rec.alpha[k]) * p - std::sqrt(rec.beta[k]) * pm1) * inv;
    double dk1 = (p + (t - rec.alpha[k]) * d - std::sqrt(rec.beta[k]) * dm1) * inv;
    pm1 = p;
    p = pk1;
    dm1 = d;
    d = dk1;
    values[k + 1] = p;
    if (derivatives)
    {
      derivatives[k + 1] = d;
    }
  }
}

GaussRule GaussFromRecurrence(const RecurrenceCoefficients &rec, int q)
{
  if (q < 1 || rec.alpha.size() < q || rec.beta.size() < q + 1)
  {
    throw Error("Gauss rule request exceeds available recurrence coefficients");
  }
  Vector diag = rec.alpha.head(q);
  Vector subdiag(q > 1 ? q - 1 : 0);
  for (int k = 0; k + 1 < q; k++)
  {
    subdiag[k] = std::sqrt(rec.beta[k + 1]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(q);

  std::vector<double> p(q + 1), dp(q + 1);
  for (int i = 0; i < q; i++)
  {
    double t = rule.nodes[i];
    // A couple of Newton steps on p_q sharpen the tridiagonal eigenvalues to
    // full precision; the Christoffel function then gives the weight.
    for (int it = 0; it < 2; it++)
    {
      EvaluateOrthonormal(rec, q, t, p.data(), dp.data());
      if (dp[q] != 0.0)
      {
        double step = p[q] / dp[q];
        if (std::abs(step) < 0.5)
        {
          t -= step;
        }
      }
    }
    EvaluateOrthonormal(rec, q, t, p.data(), dp.data());
    double sum = 0.0;
    for (int j = 0; j < q; j++)
    {
      sum += p[j] * p[j];
    }
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

GaussRule GaussLegendre(int q)
{
  return GaussFromRecurrence(JacobiRecurrence(q, 0.0), q);
}

GaussRule GaussRadialSquared(int q)
{
  return GaussFromRecurrence(JacobiRecurrence(q, 2.0), q);
}

}  // namespace specmap
