// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_DIAGNOSTICS_HPP
#define SPECMAP_DIAGNOSTICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "specmap/eigenfunction.hpp"
#include "specmap/eigensolve.hpp"
#include "specmap/geometry.hpp"

namespace specmap
{

// |v[i+1] - v[i]| for a sequence of eigenvalue approximations.
Vector EigenvalueDiffs(const Vector &values);

// Fixed, strictly interior comparison grid (columns are points): 64 radii x
// 128 angles on the disk, 32 radii x 32 polar x 64 azimuth on the ball.
Matrix ReferenceGrid(ReferenceDomain domain);

// sup |a - b| over the columns of grid.
double EigenfunctionDiff(const Eigenfunction &a, const Eigenfunction &b,
                         const Matrix &grid);

// |(-Delta_h u - lambda u)(s)| with central second differences of step h per
// physical axis. The first form takes u on physical coordinates directly; the
// second evaluates the expansion through the inverse map at every stencil
// point.
double ResidualAtPoint(const std::function<double(const Vector &)> &u, double lambda,
                       const Vector &s, double h);
double ResidualAtPoint(const Eigenfunction &u, double lambda, const DomainMap &map,
                       const Vector &s, double h);

// Angle between two expansions in L^2 of the physical domain, computed on the
// reference domain with weight |det J| and a rule of the given order. The
// cosine is folded to [0, 1] (sign-blind) and clamped; cosine_raw records the
// pre-clamp value, which can exceed 1 by rounding for near-identical inputs.
struct AngleResult
{
  double angle;
  double cosine_raw;
};

AngleResult L2Angle(const Eigenfunction &a, const Eigenfunction &b, const DomainMap &map,
                    int quadrature_order);

// Quadrature order for a basis degree: "auto" -> n+2, "n" -> max(n, 2),
// "n+K" -> n+K, a plain integer -> itself.
int ResolveQuadratureOrder(const std::string &mode, int degree);

struct ConvergenceOptions
{
  std::vector<int> degrees;            // sweep degrees, any order, deduplicated
  int reference_degree = -1;           // must be >= max(degrees)
  std::vector<int> ranks = {1, 2};     // mode ranks in the BC counting
  std::string q_mode = "auto";
  double fd_step = 1e-4;
  Vector residual_point;               // reference coords; default 0.1 per axis
  bool residuals = true;
  int threads = 1;
};

struct ConvergenceRow
{
  int degree = 0;
  int basis_size = 0;
  int quadrature_order = 0;
  // Per rank, aligned with ConvergenceReport::ranks. Entries are NaN when the
  // rank is not resolvable at this degree.
  std::vector<double> lambda;
  std::vector<double> residual_bound;
  std::vector<double> dlam_ref;        // |lambda - reference lambda|
  std::vector<double> angle_ref;       // L2 angle vs the reference expansion
  std::vector<double> cosine_raw;
  std::vector<double> point_residual;  // empty when residuals are disabled
  std::vector<double> lambda_step;     // vs the previous listed degree
  std::vector<double> efun_step;       // sup-grid diff vs the previous degree
};

struct ConvergenceReport
{
  std::string map_name;
  std::string coefficient_desc;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int dim = 2;
  std::string q_mode;
  double fd_step = 0.0;
  Vector residual_point;
  std::vector<int> ranks;
  int reference_degree = 0;
  int reference_quadrature_order = 0;
  std::vector<double> reference_lambda;
  std::vector<ConvergenceRow> rows;
};

// Degree sweep against a high-degree reference solution of the same problem:
// one assembly + eigensolve per degree, grid and inner-product evaluations
// cached so each eigenfunction is expanded once.
ConvergenceReport ConvergenceStudy(const DomainMap &map, const CoefficientField &coeff,
                                   BoundaryCondition bc, const ConvergenceOptions &options);

// table.csv columns: n, N_n, then dlam_<rank>..., angle_<rank>..., and (when
// residuals are enabled) R_<rank>..., all values with 17 significant digits.
void WriteReportCsv(const ConvergenceReport &report, const std::string &path);

// Full report as a JSON object (string form; callers may embed it).
std::string ReportJson(const ConvergenceReport &report);
void WriteReportJson(const ConvergenceReport &report, const std::string &path);

// Per-rank figure series: fig_lambda_diff_k<rank>.csv (consecutive eigenvalue
// steps), fig_efun_diff_k<rank>.csv (consecutive sup-grid steps), and
// fig_residual_k<rank>.csv, each with an "n,value" header.
void WriteFigureData(const ConvergenceReport &report, const std::string &directory);

}  // namespace specmap

#endif  // SPECMAP_DIAGNOSTICS_HPP
