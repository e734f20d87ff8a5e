// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_GEOMETRY_HPP
#define SPECMAP_GEOMETRY_HPP

#include <functional>
#include <string>

#include "specmap/quadrature.hpp"
#include "specmap/types.hpp"

namespace specmap
{

// Smooth bijection Phi from the closed unit disk/ball onto the physical
// domain, with Jacobian and inverse. Built-in maps are constructed by the
// factories below; Custom() accepts user callables (inverse optional, a damped
// Newton iteration is used when absent).
class DomainMap
{
public:
  using MapFn = std::function<Vector(const Vector &)>;
  using JacobianFn = std::function<Matrix(const Vector &)>;

  struct JacobianData
  {
    Matrix j;        // dim x dim
    double abs_det;  // |det J|
  };

  static DomainMap Identity(int dim);

  // 2D: (x, y) -> (x - y + a x^2, x + y) scaled onto an ellipse-like region;
  // requires a in (0, 1). Closed-form inverse.
  static DomainMap PlanarQuadratic(double a);

  // 3D linear map given by an invertible 3x3 matrix.
  static DomainMap Ellipsoid(const Eigen::Matrix3d &m);

  // 3D radial stretch towards a star-shaped boundary: identity for |x| <= 1/2,
  // then a C^4 blend of the radius towards a fixed angular boundary profile.
  static DomainMap Star();

  // forward and jacobian must remain evaluable slightly outside the closed
  // unit ball: the Newton inverse may probe such points before damping pulls
  // the iterate back inside.
  static DomainMap Custom(std::string name, int dim, MapFn forward, JacobianFn jacobian,
                          MapFn inverse = nullptr);

  const std::string &Name() const { return name_; }
  int Dim() const { return dim_; }
  bool HasClosedFormInverse() const { return static_cast<bool>(inverse_); }

  // Phi(x); x must satisfy |x| <= 1 + 1e-12.
  Vector MapPoint(const Vector &x) const;

  // Jacobian of Phi at x together with |det J|; throws SingularMapError when
  // |det J| < 1e-14.
  JacobianData Jacobian(const Vector &x) const;

  // Phi^{-1}(s); the result must land in the closed unit ball (tolerance
  // 1e-10), otherwise the point is outside the domain.
  Vector InverseMap(const Vector &s) const;

  // Evaluate det J at every node of the rule; throws SingularMapError on a
  // sign change or a near-zero value. Run before any heavy assembly.
  void Validate(const QuadratureRule &rule) const;

private:
  DomainMap(std::string name, int dim, MapFn fwd, JacobianFn jac, MapFn inv)
    : name_(std::move(name)), dim_(dim), forward_(std::move(fwd)),
      jacobian_(std::move(jac)), inverse_(std::move(inv))
  {
  }

  Vector NewtonInverse(const Vector &s) const;

  std::string name_;
  int dim_;
  MapFn forward_;        // total: callable slightly outside the ball too
  JacobianFn jacobian_;  // total likewise
  MapFn inverse_;        // empty => Newton
};

// Coefficients (A, gamma) of the operator u -> -div(A grad u) + gamma u on the
// physical domain. A must be symmetric positive definite, gamma >= 0.
class CoefficientField
{
public:
  using MatrixFn = std::function<Matrix(const Vector &)>;
  using ScalarFn = std::function<double(const Vector &)>;

  // A = I, gamma = 0 (the Laplacian).
  static CoefficientField Laplacian(int dim);

  // A = I, gamma constant.
  static CoefficientField Isotropic(int dim, double gamma);

  static CoefficientField General(int dim, MatrixFn a, ScalarFn gamma,
                                  std::string description);

  int Dim() const { return dim_; }
  const std::string &Description() const { return description_; }
  Matrix A(const Vector &s) const { return a_(s); }
  double Gamma(const Vector &s) const { return gamma_(s); }

private:
  CoefficientField(int dim, MatrixFn a, ScalarFn gamma, std::string description)
    : dim_(dim), a_(std::move(a)), gamma_(std::move(gamma)),
      description_(std::move(description))
  {
  }

  int dim_;
  MatrixFn a_;
  ScalarFn gamma_;
  std::string description_;
};

// Coefficients of the pulled-back operator at reference point x:
// a_tilde = J^{-1} A(Phi(x)) J^{-T}, gamma_tilde = gamma(Phi(x)), and the
// volume weight |det J|.
struct TransformedCoefficients
{
  Matrix a_tilde;
  double gamma_tilde;
  double weight;
};

TransformedCoefficients TransformCoefficients(const DomainMap &map,
                                              const CoefficientField &coeff,
                                              const Vector &x);

}  // namespace specmap

#endif  // SPECMAP_GEOMETRY_HPP
