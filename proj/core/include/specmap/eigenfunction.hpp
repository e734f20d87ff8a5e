// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_EIGENFUNCTION_HPP
#define SPECMAP_EIGENFUNCTION_HPP

#include <memory>

#include "specmap/basis.hpp"
#include "specmap/eigensolve.hpp"
#include "specmap/geometry.hpp"

namespace specmap
{

// Trial-space expansion u~(x) = sum_l alpha_l psi_l(x) on the reference
// domain; the physical eigenfunction is u(s) = u~(Phi^{-1}(s)).
class Eigenfunction
{
public:
  Eigenfunction(std::shared_ptr<const PolynomialBasis> basis, BoundaryCondition bc,
                Vector coefficients);

  int Dim() const { return basis_->Dim(); }
  int Degree() const { return basis_->Degree(); }
  BoundaryCondition Bc() const { return bc_; }
  const Vector &Coefficients() const { return coefficients_; }

  // Value at a reference point.
  double Value(const Vector &x) const;

  // Values at many reference points (columns of a dim x m matrix).
  Vector Values(const Matrix &points) const;

  // Value at a physical point, through the inverse map.
  double ValuePhysical(const DomainMap &map, const Vector &s) const;

private:
  std::shared_ptr<const PolynomialBasis> basis_;
  BoundaryCondition bc_;
  Vector coefficients_;
};

// Wrap solution column c (ascending order) as an eigenfunction.
Eigenfunction MakeEigenfunction(const EigenSolution &solution, int column);

}  // namespace specmap

#endif  // SPECMAP_EIGENFUNCTION_HPP
