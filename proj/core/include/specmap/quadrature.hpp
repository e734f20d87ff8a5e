// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_QUADRATURE_HPP
#define SPECMAP_QUADRATURE_HPP

#include <functional>

#include "specmap/types.hpp"

namespace specmap
{

// Product quadrature rule on the reference disk or ball. Nodes are stored as
// columns (dim x count) in Cartesian reference coordinates; all nodes are
// strictly interior and all weights are positive.
struct QuadratureRule
{
  ReferenceDomain domain;
  int order;      // the parameter q the rule was built from
  Matrix nodes;   // dim x count
  Vector weights; // count

  int Dim() const { return static_cast<int>(nodes.rows()); }
  int Count() const { return static_cast<int>(nodes.cols()); }
  Eigen::Ref<const Vector> Node(int i) const { return nodes.col(i); }
};

// Disk rule with q+1 radial Gauss points on [0, 1] and 2q+1 uniform angles:
// exact for bivariate polynomials of total degree <= 2q. (q+1)(2q+1) nodes.
QuadratureRule DiskRule(int q);

// Ball rule with q radial points (weight r^2 via (1+t)^2 Gauss), q Gauss
// points in cos(polar), and 2q uniform azimuth angles: exact for trivariate
// polynomials of total degree <= 2q-1. 2q^3 nodes.
QuadratureRule BallRule(int q);

// Sum of w_i f(x_i) accumulated in a fixed pairwise order, so the result is
// independent of any threading of the caller. Throws QuadratureError if f
// returns a non-finite value.
double Integrate(const QuadratureRule &rule,
                 const std::function<double(Eigen::Ref<const Vector>)> &f);

// Pairwise (cascade) sum of the first n entries of v; deterministic for a
// given ordering of v.
double PairwiseSum(const double *v, int n);

}  // namespace specmap

#endif  // SPECMAP_QUADRATURE_HPP
