// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/eigensolve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace specmap
{

namespace
{

// Unblocked lower Cholesky that reports the index of the first nonpositive
// pivot; used to diagnose indefiniteness precisely. Returns -1 on success.
int CholeskyPivotScan(Matrix a)
{
  int n = static_cast<int>(a.rows());
  for (int k = 0; k < n; k++)
  {
    double d = a(k, k);
    if (!(d > 0.0) || !std::isfinite(d))
    {
      return k;
    }
    double inv = 1.0 / std::sqrt(d);
    a(k, k) = std::sqrt(d);
    for (int i = k + 1; i < n; i++)
    {
      a(i, k) *= inv;
    }
    for (int j = k + 1; j < n; j++)
    {
      for (int i = j; i < n; i++)
      {
        a(i, j) -= a(i, k) * a(j, k);
      }
    }
  }
  return -1;
}

Matrix LowerCholesky(const Matrix &m, const char *what)
{
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
  {
    int pivot = CholeskyPivotScan(m);
    throw DefinitenessError(std::string(what) +
                                " is not positive definite (first failing Cholesky "
                                "pivot at index " +
                                std::to_string(pivot) + ")",
                            pivot);
  }
  return llt.matrixL();
}

}  // namespace

Vector NormalizeVector(Vector alpha)
{
  double amax = alpha.cwiseAbs().maxCoeff();
  if (amax == 0.0)
  {
    return alpha;
  }
  int first = 0;
  for (int i = 0; i < alpha.size(); i++)
  {
    if (std::abs(alpha[i]) == amax)
    {
      first = i;
      break;
    }
  }
  double s = (alpha[first] > 0.0 ? 1.0 : -1.0) * amax;
  return alpha / s;
}

int ModeIndex(BoundaryCondition bc, int k)
{
  if (bc == BoundaryCondition::Neumann)
  {
    if (k < 0)
    {
      throw Error("Neumann mode rank must be >= 0");
    }
    return k;
  }
  if (k < 1)
  {
    throw Error("Dirichlet mode rank must be >= 1");
  }
  return k - 1;
}

EigenSolution SolveGeneralized(const GalerkinSystem &system, int count)
{
  int n = system.Size();
  if (count < 1)
  {
    throw Error("eigenpair count must be >= 1");
  }
  if (count > n)
  {
    throw Error("requested more eigenpairs than basis members");
  }

  // Members annihilated by the quadrature rule have an exactly (numerically)
  // zero mass diagonal; they carry no finite generalized eigenvalue and are
  // removed by a Schur complement on the stiffness block.
  const Matrix &g = system.stiffness;
  const Matrix &m = system.mass;
  double max_diag = m.diagonal().maxCoeff();
  if (!(max_diag > 0.0))
  {
    throw DefinitenessError("mass matrix is not positive definite (first failing "
                            "Cholesky pivot at index 0)",
                            0);
  }
  const double null_tol = 1e-20 * max_diag;
  std::vector<int> keep, drop;
  for (int i = 0; i < n; i++)
  {
    if (m(i, i) > null_tol)
    {
      keep.push_back(i);
    }
    else if (m(i, i) >= -null_tol)
    {
      drop.push_back(i);
    }
    else
    {
      // A genuinely negative diagonal cannot come from a quadrature rule with
      // positive weights; the matrix is indefinite, not rank-deficient.
      throw DefinitenessError("mass matrix is not positive definite (negative "
                              "diagonal at index " +
                                  std::to_string(i) + ")",
                              i);
    }
  }
  int nk = static_cast<int>(keep.size());
  if (count > nk)
  {
    throw Error("requested more eigenpairs than the quadrature rule resolves (" +
                std::to_string(nk) + " of " + std::to_string(n) +
                " members carry mass); raise the quadrature order");
  }

  Matrix g11, m11, g12, g22;
  Eigen::LLT<Matrix> schur_llt;
  bool deflated = !drop.empty();
  if (!deflated)
  {
    g11 = g;
    m11 = m;
  }
  else
  {
    Eigen::VectorXi ik(nk), id(n - nk);
    for (int i = 0; i < nk; i++)
    {
      ik[i] = keep[i];
    }
    for (int i = 0; i < n - nk; i++)
    {
      id[i] = drop[i];
    }
    g11 = g(ik, ik);
    m11 = m(ik, ik);
    g12 = g(ik, id);
    g22 = g(id, id);
    schur_llt.compute(g22);
    if (schur_llt.info() != Eigen::Success)
    {
      int pivot = CholeskyPivotScan(g22);
      throw DefinitenessError("stiffness block of quadrature-null members is not "
                              "positive definite (first failing Cholesky pivot at "
                              "index " +
                                  std::to_string(pivot) + ")",
                              pivot);
    }
    g11 -= g12 * schur_llt.solve(g12.transpose());
    // A fresh matrix: assigning the symmetrized expression back into g11
    // would alias its own transpose.
    Matrix sym = 0.5 * (g11 + g11.transpose());
    g11 = std::move(sym);
  }

  Matrix l = LowerCholesky(m11, "mass matrix");
  // B = L^{-1} G11 L^{-T} via two triangular solves.
  Matrix b = l.triangularView<Eigen::Lower>().solve(g11);
  b = l.triangularView<Eigen::Lower>().solve(b.transpose()).transpose();
  Matrix b_sym = 0.5 * (b + b.transpose());
  b = std::move(b_sym);

  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success)
  {
    throw Error("symmetric eigensolver failed to converge");
  }

  EigenSolution sol;
  sol.degree = system.degree;
  sol.dim = system.dim;
  sol.bc = system.bc;
  sol.null_members = drop;
  sol.eigenvalues = es.eigenvalues().head(count);
  sol.eigenvectors.resize(n, count);
  sol.residuals.resize(count);

  double gnorm = g.norm(), mnorm = m.norm();
  for (int c = 0; c < count; c++)
  {
    Vector beta = es.eigenvectors().col(c);
    Vector a_keep = l.transpose().triangularView<Eigen::Upper>().solve(beta);
    Vector alpha = Vector::Zero(n);
    if (!deflated)
    {
      alpha = a_keep;
    }
    else
    {
      Vector a_drop = -schur_llt.solve(g12.transpose() * a_keep);
      for (int i = 0; i < nk; i++)
      {
        alpha[keep[i]] = a_keep[i];
      }
      for (int i = 0; i < n - nk; i++)
      {
        alpha[drop[i]] = a_drop[i];
      }
    }
    alpha = NormalizeVector(std::move(alpha));
    double lambda = sol.eigenvalues[c];
    sol.residuals[c] = (g * alpha - lambda * (m * alpha)).norm() /
                       (gnorm + std::abs(lambda) * mnorm);
    sol.eigenvectors.col(c) = std::move(alpha);
  }
  return sol;
}

}  // namespace specmap
