// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "specmap/cli.hpp"

namespace
{

struct CommandFlags
{
  CLI::App *cmd = nullptr;
  std::string config;
  // Flag spellings and the config keys they override; values live in a deque
  // so the references handed to CLI11 stay valid.
  std::vector<std::pair<CLI::Option *, std::string>> overrides;
  std::deque<std::string> values;

  void Add(const std::string &flag, const std::string &key, const std::string &help)
  {
    values.emplace_back();
    overrides.emplace_back(cmd->add_option(flag, values.back(), help), key);
  }
};

void AddCommonFlags(CommandFlags &f)
{
  f.cmd->add_option("--config", f.config, "key=value configuration file");
  f.Add("--out", "out", "output directory (created if missing)");
  f.Add("--bc", "bc", "boundary condition: dirichlet|neumann");
  f.Add("--map", "map",
        "domain map: identity2d|identity3d|planar-quadratic|ellipsoid|star");
  f.Add("--q", "q", "quadrature order: auto, n, n+K, or a positive integer");
  f.Add("--gamma", "gamma", "zero-order coefficient: a number or 'norm2'");
  f.Add("--threads", "threads", "assembly worker threads");
  f.Add("--map-a", "map.a", "planar-quadratic parameter, in (0, 1)");
  f.Add("--map-matrix", "map.matrix", "ellipsoid matrix, 9 entries rows first");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Galerkin eigenvalue solver for elliptic operators on smoothly "
               "mapped disk and ball domains"};
  app.require_subcommand(1);

  CommandFlags solve;
  solve.cmd = app.add_subcommand("solve", "solve the eigenproblem at one degree");
  AddCommonFlags(solve);
  solve.Add("--degree", "degree", "basis degree n");
  solve.Add("--k", "k", "number of eigenpairs to report");
  solve.Add("--dump-system", "dump_system", "write the assembled matrices: text|binary");

  CommandFlags sweep;
  sweep.cmd = app.add_subcommand("sweep", "degree sweep with convergence diagnostics");
  AddCommonFlags(sweep);
  sweep.Add("--degrees", "degrees", "degree list, e.g. 1..14 or 3,5,7");
  sweep.Add("--reference", "reference", "reference degree (default: max degree + 1)");
  sweep.Add("--ranks", "ranks", "mode ranks to track, e.g. 1,2");
  sweep.Add("--fd-step", "h", "finite-difference step of the point residual");
  sweep.Add("--residuals", "residuals", "enable the point residual column");
  sweep.Add("--residual-point", "residual_point",
            "reference coordinates of the residual point");
  sweep.Add("--k", "k", "eigenpair count (sweeps are driven by --ranks)");

  CommandFlags sample;
  sample.cmd = app.add_subcommand("sample", "sample one eigenfunction on a grid");
  AddCommonFlags(sample);
  sample.Add("--degree", "degree", "basis degree n");
  sample.Add("--k", "k", "mode rank to sample");
  sample.Add("--grid", "grid", "grid counts, e.g. 64x128 (2D) or 32x32x64 (3D)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return 2;
  }

  CommandFlags *active = nullptr;
  for (CommandFlags *f : {&solve, &sweep, &sample})
  {
    if (f->cmd->parsed())
    {
      active = f;
    }
  }

  try
  {
    specmap::RunConfig config;
    if (!active->config.empty())
    {
      config = specmap::LoadConfigFile(active->config);
    }
    config.command = active->cmd->get_name();
    for (size_t i = 0; i < active->overrides.size(); i++)
    {
      if (active->overrides[i].first->count() > 0)
      {
        specmap::ApplyConfigValue(config, active->overrides[i].second,
                                  active->values[i]);
      }
    }
    specmap::Run(config);
    return 0;
  }
  catch (const specmap::ConfigError &e)
  {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
