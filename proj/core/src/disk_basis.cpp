// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/disk_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specmap
{

using std::numbers::pi;

ChebyshevU EvaluateChebyshevU(int n, double t)
{
  if (n < 0)
  {
    throw Error("Chebyshev degree must be nonnegative");
  }
  t = std::clamp(t, -1.0, 1.0);
  ChebyshevU out;
  out.values.resize(n + 1);
  out.derivatives.resize(n + 1);
  out.values[0] = 1.0;
  out.derivatives[0] = 0.0;
  if (n >= 1)
  {
    out.values[1] = 2.0 * t;
    out.derivatives[1] = 2.0;
  }
  for (int k = 1; k < n; k++)
  {
    out.values[k + 1] = 2.0 * t * out.values[k] - out.values[k - 1];
    out.derivatives[k + 1] =
        2.0 * out.values[k] + 2.0 * t * out.derivatives[k] - out.derivatives[k - 1];
  }
  return out;
}

DiskBasis::DiskBasis(int degree) : degree_(degree)
{
  if (degree < 0)
  {
    throw Error("basis degree must be nonnegative");
  }
  index_.reserve((degree + 1) * (degree + 2) / 2);
  for (int m = 0; m <= degree; m++)
  {
    double h = pi / (m + 1);
    for (int k = 0; k <= m; k++)
    {
      index_.push_back({m, k});
      dir_cos_.push_back(std::cos(k * h));
      dir_sin_.push_back(std::sin(k * h));
    }
  }
}

void DiskBasis::Evaluate(double x, double y, Vector &values, Matrix *gradients) const
{
  if (x * x + y * y > 1.0 + 1e-12)
  {
    throw DomainError("point lies outside the closed unit disk");
  }
  int n = Size();
  values.resize(n);
  if (gradients)
  {
    gradients->resize(n, 2);
  }
  constexpr double inv_sqrt_pi = 0.56418958354775628694;
  for (int ell = 0; ell < n; ell++)
  {
    int m = index_[ell].m;
    double c = dir_cos_[ell], s = dir_sin_[ell];
    double t = std::clamp(x * c + y * s, -1.0, 1.0);
    // Running form of the U recurrence: only U_m and U_m' are needed.
    double um1 = 0.0, u = 1.0, dm1 = 0.0, d = 0.0;
    for (int j = 0; j < m; j++)
    {
      double u1 = 2.0 * t * u - um1;
      double d1 = 2.0 * u + 2.0 * t * d - dm1;
      um1 = u;
      u = u1;
      dm1 = d;
      d = d1;
    }
    values[ell] = inv_sqrt_pi * u;
    if (gradients)
    {
      (*gradients)(ell, 0) = inv_sqrt_pi * d * c;
      (*gradients)(ell, 1) = inv_sqrt_pi * d * s;
    }
  }
}

void DiskBasis::Evaluate(const Vector &x, Vector &values, Matrix *gradients) const
{
  if (x.size() != 2)
  {
    throw Error("disk basis expects 2D points");
  }
  Evaluate(x[0], x[1], values, gradients);
}

}  // namespace specmap
