// Umbrella header pulling in the full solver API: domain maps and
// coefficient fields, disk/ball bases, quadrature rules, Galerkin assembly,
// the generalized eigensolver, eigenfunction evaluation, and the
// convergence-study diagnostics. The command-line support layer
// (specmap/cli.hpp) is intentionally not included.
#pragma once

#include <specmap/assembly.hpp>
#include <specmap/ball_basis.hpp>
#include <specmap/basis.hpp>
#include <specmap/diagnostics.hpp>
#include <specmap/disk_basis.hpp>
#include <specmap/eigenfunction.hpp>
#include <specmap/eigensolve.hpp>
#include <specmap/geometry.hpp>
#include <specmap/orthopoly.hpp>
#include <specmap/quadrature.hpp>
#include <specmap/types.hpp>
