// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_BALL_BASIS_HPP
#define SPECMAP_BALL_BASIS_HPP

#include <vector>

#include "specmap/basis.hpp"
#include "specmap/orthopoly.hpp"

namespace specmap
{

// Real spherical harmonic of the convention used by the ball basis, indexed by
// beta = 0..2k for degree k: even beta pairs cos((beta/2) azimuth) with the
// associated Legendre function of order beta/2, odd beta pairs
// sin(((beta+1)/2) azimuth) with order (beta+1)/2. Normalized to unit L^2 norm
// on the sphere; no Condon-Shortley sign. azimuth in [0, 2pi), polar in
// [0, pi].
struct SphericalHarmonic
{
  double value;
  double d_azimuth;  // partial derivative in the azimuth
  double d_polar;    // partial derivative in the polar angle
};

SphericalHarmonic EvaluateSphericalHarmonic(int beta, int k, double azimuth, double polar);

// Degree-j polynomial of the family orthonormal on [-1, 1] under the weight
// (1+t)^mu, with its derivative.
struct JacobiValue
{
  double value;
  double derivative;
};

JacobiValue EvaluateWeightedJacobi(int j, double mu, double t);

// Orthonormal basis of total degree <= n on the unit ball: member (m, j, beta)
// is a radial factor r^{m-2j} p_j(2r^2-1) (Jacobi weight exponent m-2j+1/2)
// times a degree-(m-2j) spherical harmonic, m = 0..n, j = 0..floor(m/2),
// beta = 0..2(m-2j). N = (n+1)(n+2)(n+3)/6. Construction refines the
// analytic normalization constants against the discrete Gram diagonal.
class BallBasis final : public PolynomialBasis
{
public:
  struct Index
  {
    int m;     // total degree of the member
    int j;     // radial polynomial index
    int beta;  // spherical harmonic counter, 0..2(m-2j)
  };

  explicit BallBasis(int degree);

  int Dim() const override { return 3; }
  int Degree() const override { return degree_; }
  int Size() const override { return static_cast<int>(index_.size()); }
  const std::vector<Index> &Indices() const { return index_; }

  void Evaluate(const Vector &x, Vector &values, Matrix *gradients) const override;

  // Factor applied to member ell by the construction-time normalization sweep
  // (unity up to quadrature rounding).
  double NormalizationScale(int ell) const { return scale_[ell]; }

private:
  void EvaluateSpherical(double x, double y, double z, double r, Vector &values,
                         Matrix *gradients) const;
  void EvaluatePolynomial(double x, double y, double z, Vector &values,
                          Matrix *gradients) const;

  int degree_;
  std::vector<Index> index_;
  std::vector<int> harmonic_order_;  // azimuthal order l per member
  std::vector<bool> odd_;            // sin branch per member
  std::vector<double> coef_;         // fully folded normalization per member
  std::vector<double> scale_;

  // Orthonormal Jacobi recurrences per radial exponent k = m-2j, with the
  // maximal polynomial index per k and offsets into flat evaluation buffers.
  std::vector<RecurrenceCoefficients> rec_;  // size degree+1
  std::vector<int> rec_degree_;
  std::vector<int> rec_offset_;

  // Coefficients (in cos polar) of the reduced associated Legendre functions
  // P_k^l / sin^l(polar), used on the polar axis and at the origin.
  std::vector<std::vector<double>> reduced_legendre_;  // index k*(degree+1)+l
};

}  // namespace specmap

#endif  // SPECMAP_BALL_BASIS_HPP
