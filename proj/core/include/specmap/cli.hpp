// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECMAP_CLI_HPP
#define SPECMAP_CLI_HPP

#include <array>
#include <string>
#include <vector>

#include "specmap/geometry.hpp"
#include "specmap/types.hpp"

namespace specmap
{

// Fully typed run configuration: defaults, overridden by a key=value config
// file, overridden again by command line flags. All fields are echoed into
// the JSON outputs after resolution.
struct RunConfig
{
  std::string command = "solve";

  std::string map_name = "identity2d";
  double map_a = 0.5;                      // planar-quadratic parameter
  std::array<double, 9> map_matrix = {1, -3, 0, 2, 1, 0, 1, 1, 1};  // ellipsoid rows
  std::string bc = "dirichlet";
  std::string gamma = "0";                 // number, or "norm2" for |s|^2

  int degree = 8;                          // solve/sample
  std::vector<int> degrees;                // sweep
  int reference_degree = -1;               // sweep; -1 -> max(degrees)+1
  std::string q = "auto";
  int k = 4;                               // solve: eigenpair count; sample: mode rank
  std::vector<int> ranks = {1, 2};         // sweep mode ranks
  double fd_step = -1.0;                   // -1 -> 0.01 for the star map, else 1e-4
  bool residuals = true;
  std::vector<double> residual_point;      // reference coords; empty -> 0.1 per axis
  std::vector<int> grid;                   // sample grid counts; empty -> default grid
  std::string out = ".";
  int threads = 1;
  std::string dump_system = "none";        // none | text | binary
};

// Parse a config file of '#'-commented key=value lines on top of defaults.
RunConfig LoadConfigFile(const std::string &path);

// Apply one key=value setting (unknown keys and malformed values raise
// ConfigError). Used for both file lines and flag overrides.
void ApplyConfigValue(RunConfig &config, const std::string &key, const std::string &value);

BoundaryCondition ParseBc(const std::string &bc);
DomainMap MakeConfiguredMap(const RunConfig &config);
CoefficientField MakeConfiguredCoefficients(const RunConfig &config, int dim);

// Eigenvalue solve at one degree: eigenvalues.csv, eigenfunctions.csv,
// solve.json (resolved config echo + results), optional system dump.
void RunSolve(const RunConfig &config);

// Degree sweep: table.csv, sweep.json, per-rank figure series.
void RunSweep(const RunConfig &config);

// Sample one eigenfunction on a physical-coordinate grid:
// eigenfunction_k<rank>.csv and sample.json.
void RunSample(const RunConfig &config);

// Dispatch on config.command.
void Run(const RunConfig &config);

}  // namespace specmap

#endif  // SPECMAP_CLI_HPP
