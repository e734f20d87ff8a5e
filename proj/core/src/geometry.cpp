// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/geometry.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace specmap
{

namespace
{

constexpr double domain_tol = 1e-12;

void CheckInDomain(const Vector &x, int dim)
{
  if (x.size() != dim)
  {
    throw Error("point dimension mismatch");
  }
  if (x.norm() > 1.0 + domain_tol)
  {
    std::ostringstream os;
    os << "reference point (";
    for (int i = 0; i < dim; i++)
    {
      os << (i ? ", " : "") << x[i];
    }
    os << ") lies outside the closed unit " << (dim == 2 ? "disk" : "ball");
    throw DomainError(os.str());
  }
}

// Radial blend for the star map: 0 on [0, 1/2], C^4 ramp to 1 at rho = 1.
inline double Blend(double rho)
{
  if (rho <= 0.5)
  {
    return 0.0;
  }
  double d = rho - 0.5;
  double d2 = d * d;
  return 32.0 * d2 * d2 * d;
}

inline double BlendDeriv(double rho)
{
  if (rho <= 0.5)
  {
    return 0.0;
  }
  double d = rho - 0.5;
  double d2 = d * d;
  return 160.0 * d2 * d2;
}

// Angular boundary profile of the star domain and its derivatives; arguments
// are cos/sin of the polar angle and the azimuth. The profile stays in
// (1, 3), so the boundary radius never collapses into the unit ball.
inline double StarProfile(double c2a, double ct, double st)
{
  return 2.0 + 0.75 * c2a * st * st * (7.0 * ct * ct - 1.0);
}

inline double StarProfilePolarDeriv(double c2a, double ct, double st)
{
  return 0.75 * c2a * 2.0 * st * ct * (14.0 * ct * ct - 8.0);
}

// d(profile)/d(azimuth) divided by sin(polar); the sin cancels analytically,
// which keeps the Jacobian finite on the polar axis.
inline double StarProfileAzimuthDerivOverSin(double s2a, double ct, double st)
{
  return -1.5 * s2a * st * (7.0 * ct * ct - 1.0);
}

}  // namespace

DomainMap DomainMap::Identity(int dim)
{
  if (dim != 2 && dim != 3)
  {
    throw ConfigError("identity map requires dim 2 or 3");
  }
  return DomainMap(
      dim == 2 ? "identity2d" : "identity3d", dim, [](const Vector &x) { return x; },
      [dim](const Vector &) { return Matrix(Matrix::Identity(dim, dim)); },
      [](const Vector &s) { return s; });
}

DomainMap DomainMap::PlanarQuadratic(double a)
{
  if (!(a > 0.0 && a < 1.0))
  {
    throw ConfigError("planar-quadratic map requires a in (0, 1)");
  }
  return DomainMap(
      "planar-quadratic", 2,
      [a](const Vector &x)
      {
        Vector s(2);
        s[0] = x[0] - x[1] + a * x[0] * x[0];
        s[1] = x[0] + x[1];
        return s;
      },
      [a](const Vector &x)
      {
        Matrix j(2, 2);
        j(0, 0) = 1.0 + 2.0 * a * x[0];
        j(0, 1) = -1.0;
        j(1, 0) = 1.0;
        j(1, 1) = 1.0;
        return j;
      },
      [a](const Vector &s)
      {
        double sum = s[0] + s[1];
        double x = (-1.0 + std::sqrt(1.0 + a * sum)) / a;
        Vector out(2);
        out[0] = x;
        out[1] = s[1] - x;
        return out;
      });
}

DomainMap DomainMap::Ellipsoid(const Eigen::Matrix3d &m)
{
  double det = m.determinant();
  if (std::abs(det) < 1e-14)
  {
    throw ConfigError("ellipsoid map matrix is singular");
  }
  Eigen::Matrix3d inv = m.inverse();
  return DomainMap(
      "ellipsoid", 3, [m](const Vector &x) { return Vector(m * x); },
      [m](const Vector &) { return Matrix(m); },
      [inv](const Vector &s) { return Vector(inv * s); });
}

DomainMap DomainMap::Star()
{
  auto forward = [](const Vector &x)
  {
    double rho = x.norm();
    double t = Blend(rho);
    if (t == 0.0)
    {
      return x;
    }
    double ct = x[2] / rho;
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double azimuth = std::atan2(x[1], x[0]);
    double s = StarProfile(std::cos(2.0 * azimuth), ct, st);
    double g = (1.0 - t) + t * s / rho;
    return Vector(g * x);
  };
  auto jacobian = [](const Vector &x)
  {
    double rho = x.norm();
    double t = Blend(rho);
    if (t == 0.0)
    {
      return Matrix(Matrix::Identity(3, 3));
    }
    double ct = x[2] / rho;
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double azimuth = std::atan2(x[1], x[0]);
    double ca = std::cos(azimuth), sa = std::sin(azimuth);
    double c2a = std::cos(2.0 * azimuth), s2a = std::sin(2.0 * azimuth);
    double s = StarProfile(c2a, ct, st);
    double tp = BlendDeriv(rho);
    double g = (1.0 - t) + t * s / rho;
    double ar = -rho * tp + tp * s - t * s / rho;
    double b = t * StarProfileAzimuthDerivOverSin(s2a, ct, st) / rho;
    double c = t * StarProfilePolarDeriv(c2a, ct, st) / rho;
    Vector omega = x / rho;
    Vector eaz(3), epol(3);
    eaz << -sa, ca, 0.0;
    epol << ct * ca, ct * sa, -st;
    Matrix j = g * Matrix::Identity(3, 3);
    j += omega * (ar * omega + b * eaz + c * epol).transpose();
    return j;
  };
  return DomainMap("star", 3, forward, jacobian, nullptr);
}

DomainMap DomainMap::Custom(std::string name, int dim, MapFn forward, JacobianFn jacobian,
                            MapFn inverse)
{
  if (dim != 2 && dim != 3)
  {
    throw ConfigError("custom map requires dim 2 or 3");
  }
  if (!forward || !jacobian)
  {
    throw ConfigError("custom map requires forward and Jacobian callables");
  }
  return DomainMap(std::move(name), dim, std::move(forward), std::move(jacobian),
                   std::move(inverse));
}

Vector DomainMap::MapPoint(const Vector &x) const
{
  CheckInDomain(x, dim_);
  return forward_(x);
}

DomainMap::JacobianData DomainMap::Jacobian(const Vector &x) const
{
  CheckInDomain(x, dim_);
  JacobianData jd;
  jd.j = jacobian_(x);
  double det = jd.j.determinant();
  if (std::abs(det) < 1e-14)
  {
    throw SingularMapError("map '" + name_ + "' has a (near-)singular Jacobian");
  }
  jd.abs_det = std::abs(det);
  return jd;
}

Vector DomainMap::InverseMap(const Vector &s) const
{
  if (s.size() != dim_)
  {
    throw Error("point dimension mismatch");
  }
  Vector x = inverse_ ? inverse_(s) : NewtonInverse(s);
  if (x.norm() > 1.0 + 1e-10)
  {
    std::ostringstream os;
    os << "point (";
    for (int i = 0; i < dim_; i++)
    {
      os << (i ? ", " : "") << s[i];
    }
    os << ") lies outside the physical domain of map '" << name_ << "'";
    throw DomainError(os.str());
  }
  return x;
}

Vector DomainMap::NewtonInverse(const Vector &s) const
{
  Vector x = Vector::Zero(dim_);
  Vector r = forward_(x) - s;
  double rn = r.norm();
  double tol = 1e-13 * (1.0 + s.norm());
  for (int it = 0; it < 50 && rn > tol; it++)
  {
    Matrix j = jacobian_(x);
    Vector dx = j.partialPivLu().solve(r);
    bool accepted = false;
    double step = 1.0;
    for (int ls = 0; ls < 30; ls++)
    {
      Vector xt = x - step * dx;
      Vector rt = forward_(xt) - s;
      if (rt.norm() < rn)
      {
        x = xt;
        r = rt;
        rn = rt.norm();
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
    {
      break;
    }
  }
  if (rn > tol)
  {
    throw InversionError("Newton inversion of map '" + name_ + "' did not converge");
  }
  return x;
}

void DomainMap::Validate(const QuadratureRule &rule) const
{
  if (rule.Dim() != dim_)
  {
    throw Error("quadrature rule dimension does not match map");
  }
  double sign = 0.0;
  for (int i = 0; i < rule.Count(); i++)
  {
    double det = jacobian_(rule.Node(i)).determinant();
    if (std::abs(det) < 1e-14)
    {
      throw SingularMapError("map '" + name_ + "' is singular at quadrature node " +
                             std::to_string(i));
    }
    double s = det > 0.0 ? 1.0 : -1.0;
    if (sign == 0.0)
    {
      sign = s;
    }
    else if (s != sign)
    {
      throw SingularMapError("map '" + name_ +
                             "' changes Jacobian orientation at quadrature node " +
                             std::to_string(i));
    }
  }
}

CoefficientField CoefficientField::Laplacian(int dim)
{
  return Isotropic(dim, 0.0);
}

CoefficientField CoefficientField::Isotropic(int dim, double gamma)
{
  if (gamma < 0.0)
  {
    throw ConfigError("gamma must be nonnegative");
  }
  std::string desc = gamma == 0.0 ? "laplacian" : "laplacian+" + std::to_string(gamma);
  return CoefficientField(
      dim, [dim](const Vector &) { return Matrix(Matrix::Identity(dim, dim)); },
      [gamma](const Vector &) { return gamma; }, std::move(desc));
}

CoefficientField CoefficientField::General(int dim, MatrixFn a, ScalarFn gamma,
                                           std::string description)
{
  if (!a || !gamma)
  {
    throw ConfigError("coefficient field requires A and gamma callables");
  }
  return CoefficientField(dim, std::move(a), std::move(gamma), std::move(description));
}

TransformedCoefficients TransformCoefficients(const DomainMap &map,
                                              const CoefficientField &coeff,
                                              const Vector &x)
{
  DomainMap::JacobianData jd = map.Jacobian(x);
  Vector s = map.MapPoint(x);
  Matrix a = coeff.A(s);
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
  {
    throw Error("coefficient matrix A is not symmetric");
  }
  double gamma = coeff.Gamma(s);
  if (gamma < 0.0)
  {
    throw Error("coefficient gamma is negative");
  }
  auto lu = jd.j.partialPivLu();
  Matrix half = lu.solve(a);
  Matrix a_tilde = lu.solve(half.transpose()).transpose();
  // Evaluate into a fresh matrix: assigning the symmetrized expression back
  // into a_tilde would alias its own transpose.
  Matrix sym = 0.5 * (a_tilde + a_tilde.transpose());

  TransformedCoefficients tc;
  tc.a_tilde = std::move(sym);
  tc.gamma_tilde = gamma;
  tc.weight = jd.abs_det;
  return tc;
}

}  // namespace specmap
