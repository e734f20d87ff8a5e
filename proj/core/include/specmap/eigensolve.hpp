// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_EIGENSOLVE_HPP
#define SPECMAP_EIGENSOLVE_HPP

#include <vector>

#include "specmap/assembly.hpp"
#include "specmap/types.hpp"

namespace specmap
{

// Eigenpairs of G alpha = lambda M alpha, ascending, with sup-normalized
// coefficient vectors (largest-magnitude entry is +1; the first such entry
// fixes the sign) and backward residuals
// |G a - lambda M a|_2 / (|G|_F + |lambda| |M|_F).
struct EigenSolution
{
  Vector eigenvalues;   // count entries, ascending
  Matrix eigenvectors;  // N x count
  Vector residuals;     // count entries

  int degree;
  int dim;
  BoundaryCondition bc;

  // Basis members whose discrete mass vanished identically under the chosen
  // quadrature rule (possible for coarse rules at the top degree); they carry
  // no finite eigenvalues and are eliminated before factorization.
  std::vector<int> null_members;

  int Count() const { return static_cast<int>(eigenvalues.size()); }
};

// Solve the pencil by Cholesky reduction of M and a dense symmetric
// eigensolve of L^{-1} G L^{-T}. Throws DefinitenessError (with the pivot
// index) if M is not positive definite beyond quadrature-null members.
// count limits how many leading pairs are returned.
EigenSolution SolveGeneralized(const GalerkinSystem &system, int count);

// Scale so the largest-magnitude entry becomes +1 (sign taken from the first
// entry attaining the maximum). Zero vectors pass through unchanged.
Vector NormalizeVector(Vector alpha);

// Column in an ascending eigensolution holding the mode of rank k in the
// conventional counting: Neumann counts from the constant mode (k = 0 ->
// column 0), Dirichlet from the first mode (k = 1 -> column 0).
int ModeIndex(BoundaryCondition bc, int k);

}  // namespace specmap

#endif  // SPECMAP_EIGENSOLVE_HPP
