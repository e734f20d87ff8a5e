// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_BASIS_HPP
#define SPECMAP_BASIS_HPP

#include <memory>

#include "specmap/types.hpp"

namespace specmap
{

// Orthonormal polynomial basis on the reference disk or ball. evaluate fills
// values (size N) and optionally gradients (N x dim, row per member) at a
// point of the closed reference domain.
class PolynomialBasis
{
public:
  virtual ~PolynomialBasis() = default;

  virtual int Dim() const = 0;
  virtual int Degree() const = 0;
  virtual int Size() const = 0;

  virtual void Evaluate(const Vector &x, Vector &values, Matrix *gradients) const = 0;

  // Trial-space evaluation: Neumann passes the basis through, Dirichlet
  // multiplies every member by (1 - |x|^2) (product rule for gradients), so
  // trial functions vanish on the reference boundary.
  void EvaluateTrial(BoundaryCondition bc, const Vector &x, Vector &values,
                     Matrix *gradients) const;
};

// Basis for the given dimension (2 or 3) and maximum total degree n. Degree-n
// instances are cached: repeated calls return the same object.
std::shared_ptr<const PolynomialBasis> MakeBasis(int dim, int degree);

}  // namespace specmap

#endif  // SPECMAP_BASIS_HPP
