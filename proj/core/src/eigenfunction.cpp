// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/eigenfunction.hpp"

namespace specmap
{

Eigenfunction::Eigenfunction(std::shared_ptr<const PolynomialBasis> basis,
                             BoundaryCondition bc, Vector coefficients)
  : basis_(std::move(basis)), bc_(bc), coefficients_(std::move(coefficients))
{
  if (!basis_ || coefficients_.size() != basis_->Size())
  {
    throw Error("coefficient vector does not match basis size");
  }
}

double Eigenfunction::Value(const Vector &x) const
{
  Vector v;
  basis_->EvaluateTrial(bc_, x, v, nullptr);
  return coefficients_.dot(v);
}

Vector Eigenfunction::Values(const Matrix &points) const
{
  if (points.rows() != Dim())
  {
    throw Error("point matrix dimension mismatch");
  }
  Vector out(points.cols());
  Vector v;
  for (int i = 0; i < points.cols(); i++)
  {
    basis_->EvaluateTrial(bc_, points.col(i), v, nullptr);
    out[i] = coefficients_.dot(v);
  }
  return out;
}

double Eigenfunction::ValuePhysical(const DomainMap &map, const Vector &s) const
{
  return Value(map.InverseMap(s));
}

Eigenfunction MakeEigenfunction(const EigenSolution &solution, int column)
{
  if (column < 0 || column >= solution.Count())
  {
    throw Error("eigenfunction column out of range");
  }
  return Eigenfunction(MakeBasis(solution.dim, solution.degree), solution.bc,
                       solution.eigenvectors.col(column));
}

}  // namespace specmap
