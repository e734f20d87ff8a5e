// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_DISK_BASIS_HPP
#define SPECMAP_DISK_BASIS_HPP

#include <vector>

#include "specmap/basis.hpp"

namespace specmap
{

// Chebyshev polynomials of the second kind U_0..U_n and their derivatives at
// t, via the three-term recurrence. t is clamped to [-1, 1] (arguments may
// stray past 1 by rounding only).
struct ChebyshevU
{
  Vector values;
  Vector derivatives;
};

ChebyshevU EvaluateChebyshevU(int n, double t);

// Orthonormal basis of total degree <= n on the unit disk, built from ridge
// directions: member (m, k) is U_m(x cos(k h_m) + y sin(k h_m)) / sqrt(pi)
// with h_m = pi/(m+1), k = 0..m, ordered by m then k. N = (n+1)(n+2)/2.
class DiskBasis final : public PolynomialBasis
{
public:
  struct Index
  {
    int m;  // ridge polynomial degree
    int k;  // direction counter, 0..m
  };

  explicit DiskBasis(int degree);

  int Dim() const override { return 2; }
  int Degree() const override { return degree_; }
  int Size() const override { return static_cast<int>(index_.size()); }
  const std::vector<Index> &Indices() const { return index_; }

  void Evaluate(const Vector &x, Vector &values, Matrix *gradients) const override;
  void Evaluate(double x, double y, Vector &values, Matrix *gradients) const;

private:
  int degree_;
  std::vector<Index> index_;
  std::vector<double> dir_cos_, dir_sin_;  // per member, cos/sin of k h_m
};

}  // namespace specmap

#endif  // SPECMAP_DISK_BASIS_HPP
