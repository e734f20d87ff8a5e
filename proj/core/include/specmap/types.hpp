// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_TYPES_HPP
#define SPECMAP_TYPES_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace specmap
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Boundary condition selecting the trial space on the reference domain:
// Dirichlet multiplies every basis polynomial by (1 - |x|^2) so traces vanish
// on the unit sphere/circle, Neumann uses the plain polynomials.
enum class BoundaryCondition
{
  Dirichlet,
  Neumann
};

// Reference domain the physical geometry is pulled back to.
enum class ReferenceDomain
{
  Disk,
  Ball
};

inline constexpr int Dimension(ReferenceDomain d)
{
  return (d == ReferenceDomain::Disk) ? 2 : 3;
}

inline constexpr ReferenceDomain DomainOfDimension(int dim)
{
  return (dim == 2) ? ReferenceDomain::Disk : ReferenceDomain::Ball;
}

inline const char *ToString(BoundaryCondition bc)
{
  return (bc == BoundaryCondition::Dirichlet) ? "dirichlet" : "neumann";
}

// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the closed reference domain (or its image).
class DomainError : public Error
{
public:
  using Error::Error;
};

// A domain map degenerates: zero, near-zero, or sign-changing Jacobian
// determinant, or a non-invertible map parameter.
class SingularMapError : public Error
{
public:
  using Error::Error;
};

// Newton inversion of a domain map failed to converge.
class InversionError : public Error
{
public:
  using Error::Error;
};

// A matrix required to be positive definite is not; pivot() reports the
// zero-based index of the first failing Cholesky pivot when known.
class DefinitenessError : public Error
{
public:
  DefinitenessError(const std::string &msg, int pivot = -1) : Error(msg), pivot_(pivot) {}
  int pivot() const { return pivot_; }

private:
  int pivot_;
};

// An integrand evaluated to a non-finite value at a quadrature node.
class QuadratureError : public Error
{
public:
  using Error::Error;
};

// Invalid run configuration (file, key, or flag).
class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace specmap

#endif  // SPECMAP_TYPES_HPP
