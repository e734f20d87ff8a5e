// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/ball_basis.hpp"

#include <cmath>
#include <numbers>

#include "specmap/quadrature.hpp"

namespace specmap
{

using std::numbers::pi;

namespace
{

// prod_{i=a+1}^{b} i, so (k+l)!/(k-l)! = ProductRange(k-l, k+l).
double ProductRange(int a, int b)
{
  double p = 1.0;
  for (int i = a + 1; i <= b; i++)
  {
    p *= i;
  }
  return p;
}

double DoubleFactorialOdd(int l)  // (2l-1)!!
{
  double p = 1.0;
  for (int i = 3; i <= 2 * l - 1; i += 2)
  {
    p *= i;
  }
  return p;
}

double Ipow(double b, int e)
{
  double p = 1.0;
  for (int i = 0; i < e; i++)
  {
    p *= b;
  }
  return p;
}

// Unit L^2(sphere) normalization for azimuthal order l paired with the
// associated Legendre function of degree k.
double HarmonicNormalization(int k, int l)
{
  double azimuthal = (l == 0) ? 2.0 * pi : pi;
  double legendre = 2.0 * ProductRange(k - l, k + l) / (2.0 * k + 1.0);
  return 1.0 / std::sqrt(azimuthal * legendre);
}

void HarmonicOrder(int beta, int &l, bool &odd)
{
  odd = (beta % 2) != 0;
  l = odd ? (beta + 1) / 2 : beta / 2;
}

}  // namespace

SphericalHarmonic EvaluateSphericalHarmonic(int beta, int k, double azimuth, double polar)
{
  if (k < 0 || beta < 0 || beta > 2 * k)
  {
    throw Error("spherical harmonic index out of range");
  }
  int l;
  bool odd;
  HarmonicOrder(beta, l, odd);
  double ct = std::cos(polar), st = std::sin(polar);
  double base = DoubleFactorialOdd(l);
  double p = base * Ipow(st, l);
  double dp = (l == 0) ? 0.0 : l * ct * base * Ipow(st, l - 1);
  if (k > l)
  {
    double pm1 = p, dm1 = dp;
    p = (2.0 * l + 1.0) * ct * pm1;
    dp = (2.0 * l + 1.0) * (ct * dm1 - st * pm1);
    for (int kk = l + 1; kk < k; kk++)
    {
      double pn = ((2.0 * kk + 1.0) * ct * p - (kk + l) * pm1) / (kk - l + 1.0);
      double dn =
          ((2.0 * kk + 1.0) * (ct * dp - st * p) - (kk + l) * dm1) / (kk - l + 1.0);
      pm1 = p;
      p = pn;
      dm1 = dp;
      dp = dn;
    }
  }
  double c = HarmonicNormalization(k, l);
  double ang, dang;
  if (odd)
  {
    ang = std::sin(l * azimuth);
    dang = l * std::cos(l * azimuth);
  }
  else
  {
    ang = std::cos(l * azimuth);
    dang = -l * std::sin(l * azimuth);
  }
  return {c * ang * p, c * dang * p, c * ang * dp};
}

JacobiValue EvaluateWeightedJacobi(int j, double mu, double t)
{
  if (j < 0 || mu <= -1.0)
  {
    throw Error("invalid weighted Jacobi request");
  }
  t = std::clamp(t, -1.0, 1.0);
  RecurrenceCoefficients rec = JacobiRecurrence(j, mu);
  std::vector<double> v(j + 1), d(j + 1);
  EvaluateOrthonormal(rec, j, t, v.data(), d.data());
  return {v[j], d[j]};
}

BallBasis::BallBasis(int degree) : degree_(degree)
{
  if (degree < 0)
  {
    throw Error("basis degree must be nonnegative");
  }
  int n = degree;
  index_.reserve((n + 1) * (n + 2) * (n + 3) / 6);
  for (int m = 0; m <= n; m++)
  {
    for (int j = 0; j <= m / 2; j++)
    {
      int k = m - 2 * j;
      double radial_c = std::pow(2.0, 1.25 + 0.5 * k);
      for (int beta = 0; beta <= 2 * k; beta++)
      {
        int l;
        bool odd;
        HarmonicOrder(beta, l, odd);
        index_.push_back({m, j, beta});
        harmonic_order_.push_back(l);
        odd_.push_back(odd);
        coef_.push_back(radial_c * HarmonicNormalization(k, l));
      }
    }
  }

  rec_.resize(n + 1);
  rec_degree_.resize(n + 1);
  rec_offset_.resize(n + 2);
  rec_offset_[0] = 0;
  for (int k = 0; k <= n; k++)
  {
    rec_degree_[k] = (n - k) / 2;
    rec_[k] = JacobiRecurrence(rec_degree_[k], k + 0.5);
    rec_offset_[k + 1] = rec_offset_[k] + rec_degree_[k] + 1;
  }

  // Reduced associated Legendre functions as polynomials in cos(polar): the
  // same three-term recurrences act on coefficient vectors.
  reduced_legendre_.resize((n + 1) * (n + 1));
  auto shift = [](const std::vector<double> &q)
  {
    std::vector<double> out(q.size() + 1, 0.0);
    for (size_t i = 0; i < q.size(); i++)
    {
      out[i + 1] = q[i];
    }
    return out;
  };
  for (int l = 0; l <= n; l++)
  {
    auto &qll = reduced_legendre_[l * (n + 1) + l];
    qll = {DoubleFactorialOdd(l)};
    if (l + 1 <= n)
    {
      auto t = shift(qll);
      for (double &c : t)
      {
        c *= 2.0 * l + 1.0;
      }
      reduced_legendre_[(l + 1) * (n + 1) + l] = std::move(t);
    }
    for (int k = l + 1; k < n; k++)
    {
      const auto &qk = reduced_legendre_[k * (n + 1) + l];
      const auto &qm = reduced_legendre_[(k - 1) * (n + 1) + l];
      std::vector<double> next = shift(qk);
      for (double &c : next)
      {
        c *= 2.0 * k + 1.0;
      }
      for (size_t i = 0; i < qm.size(); i++)
      {
        next[i] -= (k + l) * qm[i];
      }
      for (double &c : next)
      {
        c /= k - l + 1.0;
      }
      reduced_legendre_[(k + 1) * (n + 1) + l] = std::move(next);
    }
  }

  // Refine the analytic normalization against the Gram diagonal of the rule
  // that later assembles mass matrices for this degree.
  scale_.assign(index_.size(), 1.0);
  QuadratureRule rule = BallRule(n + 2);
  Vector diag = Vector::Zero(Size());
  Vector vals;
  for (int i = 0; i < rule.Count(); i++)
  {
    Evaluate(rule.Node(i), vals, nullptr);
    diag += rule.weights[i] * vals.cwiseAbs2();
  }
  for (int ell = 0; ell < Size(); ell++)
  {
    double s = 1.0 / std::sqrt(diag[ell]);
    coef_[ell] *= s;
    scale_[ell] = s;
  }
}

void BallBasis::Evaluate(const Vector &x, Vector &values, Matrix *gradients) const
{
  if (x.size() != 3)
  {
    throw Error("ball basis expects 3D points");
  }
  double r = x.norm();
  if (r > 1.0 + 1e-12)
  {
    throw DomainError("point lies outside the closed unit ball");
  }
  values.resize(Size());
  if (gradients)
  {
    gradients->resize(Size(), 3);
  }
  double rxy = std::hypot(x[0], x[1]);
  if (r < 1e-12 || rxy < 1e-12 * r)
  {
    EvaluatePolynomial(x[0], x[1], x[2], values, gradients);
  }
  else
  {
    EvaluateSpherical(x[0], x[1], x[2], r, values, gradients);
  }
}

void BallBasis::EvaluateSpherical(double x, double y, double z, double r, Vector &values,
                                  Matrix *gradients) const
{
  int n = degree_;
  double rxy = std::hypot(x, y);
  double ct = std::clamp(z / r, -1.0, 1.0);
  double st = rxy / r;
  double ca = x / rxy, sa = y / rxy;

  std::vector<double> cosl(n + 1), sinl(n + 1);
  cosl[0] = 1.0;
  sinl[0] = 0.0;
  for (int l = 0; l < n; l++)
  {
    cosl[l + 1] = cosl[l] * ca - sinl[l] * sa;
    sinl[l + 1] = sinl[l] * ca + cosl[l] * sa;
  }

  std::vector<double> rpow(n + 1);
  rpow[0] = 1.0;
  for (int k = 0; k < n; k++)
  {
    rpow[k + 1] = rpow[k] * r;
  }

  double u = 2.0 * r * r - 1.0;
  std::vector<double> pj(rec_offset_[n + 1]), dpj(gradients ? rec_offset_[n + 1] : 0);
  for (int k = 0; k <= n; k++)
  {
    EvaluateOrthonormal(rec_[k], rec_degree_[k], u, pj.data() + rec_offset_[k],
                        gradients ? dpj.data() + rec_offset_[k] : nullptr);
  }

  // Associated Legendre values, polar derivatives, and values divided by
  // sin(polar), tabulated for all 0 <= l <= k <= n.
  int stride = n + 1;
  std::vector<double> P(stride * stride, 0.0), DP, PS;
  if (gradients)
  {
    DP.assign(stride * stride, 0.0);
    PS.assign(stride * stride, 0.0);
  }
  for (int l = 0; l <= n; l++)
  {
    double base = DoubleFactorialOdd(l);
    double stl = Ipow(st, l);
    P[l * stride + l] = base * stl;
    if (gradients)
    {
      double stlm1 = (l >= 1) ? Ipow(st, l - 1) : 0.0;
      DP[l * stride + l] = (l >= 1) ? l * ct * base * stlm1 : 0.0;
      PS[l * stride + l] = (l >= 1) ? base * stlm1 : 0.0;
    }
    if (l + 1 <= n)
    {
      P[(l + 1) * stride + l] = (2.0 * l + 1.0) * ct * P[l * stride + l];
      if (gradients)
      {
        DP[(l + 1) * stride + l] =
            (2.0 * l + 1.0) * (ct * DP[l * stride + l] - st * P[l * stride + l]);
        PS[(l + 1) * stride + l] = (2.0 * l + 1.0) * ct * PS[l * stride + l];
      }
    }
    for (int k = l + 1; k < n; k++)
    {
      double f1 = 2.0 * k + 1.0, f2 = k + l, inv = 1.0 / (k - l + 1.0);
      P[(k + 1) * stride + l] =
          (f1 * ct * P[k * stride + l] - f2 * P[(k - 1) * stride + l]) * inv;
      if (gradients)
      {
        DP[(k + 1) * stride + l] = (f1 * (ct * DP[k * stride + l] - st * P[k * stride + l]) -
                                    f2 * DP[(k - 1) * stride + l]) *
                                   inv;
        PS[(k + 1) * stride + l] =
            (f1 * ct * PS[k * stride + l] - f2 * PS[(k - 1) * stride + l]) * inv;
      }
    }
  }

  int count = Size();
  for (int ell = 0; ell < count; ell++)
  {
    const Index &ix = index_[ell];
    int k = ix.m - 2 * ix.j;
    int l = harmonic_order_[ell];
    double ang, dang;
    if (odd_[ell])
    {
      ang = sinl[l];
      dang = l * cosl[l];
    }
    else
    {
      ang = cosl[l];
      dang = -l * sinl[l];
    }
    double c = coef_[ell];
    double pval = pj[rec_offset_[k] + ix.j];
    double radial = pval * rpow[k];
    double leg = P[k * stride + l];
    values[ell] = c * radial * ang * leg;
    if (gradients)
    {
      double dpval = dpj[rec_offset_[k] + ix.j];
      double dradial = (k == 0) ? 4.0 * r * dpval
                                : rpow[k - 1] * (4.0 * r * r * dpval + k * pval);
      double vr = c * dradial * ang * leg;
      double vt = c * radial * ang * DP[k * stride + l];
      double va = (l == 0) ? 0.0 : c * radial * dang * PS[k * stride + l];
      (*gradients)(ell, 0) = vr * st * ca + (vt * ct * ca - va * sa) / r;
      (*gradients)(ell, 1) = vr * st * sa + (vt * ct * sa + va * ca) / r;
      (*gradients)(ell, 2) = vr * ct - vt * st / r;
    }
  }
}

void BallBasis::EvaluatePolynomial(double x, double y, double z, Vector &values,
                                   Matrix *gradients) const
{
  int n = degree_;
  double r2 = x * x + y * y + z * z;
  double u = 2.0 * r2 - 1.0;

  // Real/imaginary parts of (x + iy)^l.
  std::vector<double> C(n + 1), S(n + 1);
  C[0] = 1.0;
  S[0] = 0.0;
  for (int l = 0; l < n; l++)
  {
    C[l + 1] = x * C[l] - y * S[l];
    S[l + 1] = x * S[l] + y * C[l];
  }

  std::vector<double> zpow(n + 1), r2pow(n / 2 + 2);
  zpow[0] = 1.0;
  for (int i = 0; i < n; i++)
  {
    zpow[i + 1] = zpow[i] * z;
  }
  r2pow[0] = 1.0;
  for (int i = 0; i + 1 < static_cast<int>(r2pow.size()); i++)
  {
    r2pow[i + 1] = r2pow[i] * r2;
  }

  std::vector<double> pj(rec_offset_[n + 1]), dpj(gradients ? rec_offset_[n + 1] : 0);
  for (int k = 0; k <= n; k++)
  {
    EvaluateOrthonormal(rec_[k], rec_degree_[k], u, pj.data() + rec_offset_[k],
                        gradients ? dpj.data() + rec_offset_[k] : nullptr);
  }

  int count = Size();
  for (int ell = 0; ell < count; ell++)
  {
    const Index &ix = index_[ell];
    int k = ix.m - 2 * ix.j;
    int l = harmonic_order_[ell];
    const std::vector<double> &q = reduced_legendre_[k * (n + 1) + l];
    double h = 0.0, dhdz_part = 0.0, t_part = 0.0;
    for (int i = (k - l) % 2; i <= k - l; i += 2)
    {
      double qi = q[i];
      if (qi == 0.0)
      {
        continue;
      }
      int e = (k - l - i) / 2;
      h += qi * zpow[i] * r2pow[e];
      if (gradients)
      {
        if (i >= 1)
        {
          dhdz_part += qi * i * zpow[i - 1] * r2pow[e];
        }
        if (e >= 1)
        {
          t_part += qi * zpow[i] * e * r2pow[e - 1];
        }
      }
    }
    double cs = odd_[ell] ? S[l] : C[l];
    double c = coef_[ell];
    double pval = pj[rec_offset_[k] + ix.j];
    double w = cs * h;
    values[ell] = c * pval * w;
    if (gradients)
    {
      double dpval = dpj[rec_offset_[k] + ix.j];
      double dcs_dx = (l == 0) ? 0.0 : (odd_[ell] ? l * S[l - 1] : l * C[l - 1]);
      double dcs_dy = (l == 0) ? 0.0 : (odd_[ell] ? l * C[l - 1] : -l * S[l - 1]);
      double dhdx = 2.0 * x * t_part, dhdy = 2.0 * y * t_part;
      double dhdz = dhdz_part + 2.0 * z * t_part;
      (*gradients)(ell, 0) = c * (4.0 * x * dpval * w + pval * (dcs_dx * h + cs * dhdx));
      (*gradients)(ell, 1) = c * (4.0 * y * dpval * w + pval * (dcs_dy * h + cs * dhdy));
      (*gradients)(ell, 2) = c * (4.0 * z * dpval * w + pval * cs * dhdz);
    }
  }
}

}  // namespace specmap
