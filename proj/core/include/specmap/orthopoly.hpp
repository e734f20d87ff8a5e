// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_ORTHOPOLY_HPP
#define SPECMAP_ORTHOPOLY_HPP

#include "specmap/types.hpp"

namespace specmap
{

// Three-term recurrence data for polynomials orthogonal on [-1, 1] with
// weight (1+t)^b, b > -1. In orthonormal form,
//
//   sqrt(beta[k+1]) p_{k+1}(t) = (t - alpha[k]) p_k(t) - sqrt(beta[k]) p_{k-1}(t),
//
// with p_0 = 1/sqrt(beta[0]) and beta[0] the total mass of the weight.
struct RecurrenceCoefficients
{
  Vector alpha;  // size >= count
  Vector beta;   // size >= count + 1
  double exponent;
};

// Coefficients alpha[0..count-1], beta[0..count] for weight (1+t)^b.
RecurrenceCoefficients JacobiRecurrence(int count, double b);

// Evaluate the orthonormal polynomials p_0..p_degree (and their derivatives if
// derivatives != nullptr) at t. Output arrays hold degree+1 entries.
void EvaluateOrthonormal(const RecurrenceCoefficients &rec, int degree, double t,
                         double *values, double *derivatives = nullptr);

// A one-dimensional Gauss rule: nodes in ascending order, positive weights.
struct GaussRule
{
  Vector nodes;
  Vector weights;
};

// q-point Gauss rule for the weight encoded in rec, built from the symmetric
// tridiagonal (Jacobi) matrix, with Newton-polished nodes and weights from the
// Christoffel function. Exact for polynomials of degree <= 2q - 1.
GaussRule GaussFromRecurrence(const RecurrenceCoefficients &rec, int q);

// Convenience: q-point Gauss-Legendre on [-1, 1].
GaussRule GaussLegendre(int q);

// q-point Gauss rule on [-1, 1] with weight (1+t)^2 (radial rule for the ball).
GaussRule GaussRadialSquared(int q);

}  // namespace specmap

#endif  // SPECMAP_ORTHOPOLY_HPP
