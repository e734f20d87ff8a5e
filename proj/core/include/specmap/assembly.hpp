// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_ASSEMBLY_HPP
#define SPECMAP_ASSEMBLY_HPP

#include <functional>
#include <string>

#include "specmap/basis.hpp"
#include "specmap/geometry.hpp"
#include "specmap/types.hpp"

namespace specmap
{

// Assembled Galerkin pencil (G, M) for the pulled-back operator on the
// reference domain: G holds the gradient and gamma terms, M the weighted mass
// matrix. Both are symmetric, stored full.
struct GalerkinSystem
{
  Matrix stiffness;  // G
  Matrix mass;       // M
  int degree;
  int dim;
  BoundaryCondition bc;

  std::string map_name;
  std::string coefficient_desc;
  int quadrature_order;

  int Size() const { return static_cast<int>(mass.rows()); }
};

// Assemble the pencil at basis degree n with the reference quadrature rule of
// order q, visiting nodes in rule order (node-major). The map is validated at
// every node (orientation, singularity), A is checked for symmetry and
// ellipticity, gamma for nonnegativity. The node range is processed in
// fixed-size chunks whose partial sums are merged in chunk order, so the
// result is bit-identical for every thread count.
GalerkinSystem Assemble(const DomainMap &map, const CoefficientField &coeff,
                        BoundaryCondition bc, int degree, int quadrature_order,
                        int threads = 1);

// Galerkin solve of the source problem L u = f: returns coefficients of the
// trial expansion with G alpha = (weighted load vector of f). f takes
// physical coordinates. Requires the operator to be invertible on the trial
// space (for a pure Neumann Laplacian add a zero-order term first).
Vector SolveSource(const GalerkinSystem &system, const DomainMap &map,
                   const std::function<double(const Vector &)> &f, int quadrature_order);

// System with the zero-order coefficient shifted by c: G + c M.
GalerkinSystem Shifted(const GalerkinSystem &system, double c);

// 2-norm condition number of M (symmetric eigenvalue ratio).
double MassConditionNumber(const GalerkinSystem &system);

// Serialize the pencil: a text header (sizes, degree, bc, metadata) and the
// lower triangles of G and M, either as 17-significant-digit text or raw
// little-endian doubles.
void WriteSystem(const GalerkinSystem &system, const std::string &path, bool binary);
GalerkinSystem ReadSystem(const std::string &path);

}  // namespace specmap

#endif  // SPECMAP_ASSEMBLY_HPP
