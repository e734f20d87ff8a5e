// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <Eigen/Dense>
#include <json.hpp>

#include "specmap/assembly.hpp"
#include "specmap/diagnostics.hpp"
#include "specmap/eigenfunction.hpp"
#include "specmap/eigensolve.hpp"

namespace specmap
{

namespace
{

using nlohmann::json;
using std::numbers::pi;

std::string Trim(const std::string &s)
{
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
  {
    return "";
  }
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitOn(const std::string &s, char sep)
{
  std::vector<std::string> out;
  size_t pos = 0;
  while (true)
  {
    size_t next = s.find(sep, pos);
    out.push_back(Trim(s.substr(pos, next - pos)));
    if (next == std::string::npos)
    {
      break;
    }
    pos = next + 1;
  }
  return out;
}

int ParseInt(const std::string &s, const std::string &what)
{
  std::string t = Trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
  {
    throw ConfigError("invalid integer for " + what + ": '" + s + "'");
  }
  return v;
}

double ParseDouble(const std::string &s, const std::string &what)
{
  std::string t = Trim(s);
  try
  {
    size_t idx = 0;
    double v = std::stod(t, &idx);
    if (idx != t.size())
    {
      throw std::invalid_argument("");
    }
    return v;
  }
  catch (const std::exception &)
  {
    throw ConfigError("invalid number for " + what + ": '" + s + "'");
  }
}

std::vector<int> ParseDegreeList(const std::string &s)
{
  std::string t = Trim(s);
  size_t dots = t.find("..");
  std::vector<int> out;
  if (dots != std::string::npos)
  {
    int a = ParseInt(t.substr(0, dots), "degrees");
    int b = ParseInt(t.substr(dots + 2), "degrees");
    if (a > b)
    {
      throw ConfigError("degree range '" + s + "' is empty");
    }
    for (int n = a; n <= b; n++)
    {
      out.push_back(n);
    }
  }
  else
  {
    for (const auto &tok : SplitOn(t, ','))
    {
      out.push_back(ParseInt(tok, "degrees"));
    }
  }
  for (int n : out)
  {
    if (n < 0)
    {
      throw ConfigError("degrees must be nonnegative");
    }
  }
  return out;
}

bool ParseBool(const std::string &s, const std::string &what)
{
  std::string t = Trim(s);
  if (t == "true" || t == "1" || t == "yes" || t == "on")
  {
    return true;
  }
  if (t == "false" || t == "0" || t == "no" || t == "off")
  {
    return false;
  }
  throw ConfigError("invalid boolean for " + what + ": '" + s + "'");
}

const std::set<std::string> known_maps = {"identity2d", "identity3d", "planar-quadratic",
                                          "ellipsoid", "star"};

void PrintValue(std::FILE *fp, double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::fputs(buf, fp);
}

std::FILE *OpenOut(const std::string &path)
{
  std::FILE *fp = std::fopen(path.c_str(), "w");
  if (!fp)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  return fp;
}

}  // namespace

void ApplyConfigValue(RunConfig &config, const std::string &key, const std::string &value)
{
  if (key == "map")
  {
    std::string v = Trim(value);
    if (!known_maps.count(v))
    {
      throw ConfigError("unknown map '" + v + "'");
    }
    config.map_name = v;
  }
  else if (key == "map.a")
  {
    config.map_a = ParseDouble(value, "map.a");
  }
  else if (key == "map.matrix")
  {
    auto toks = SplitOn(Trim(value), ',');
    if (toks.size() != 9)
    {
      throw ConfigError("map.matrix needs 9 comma-separated entries (rows first)");
    }
    for (size_t i = 0; i < 9; i++)
    {
      config.map_matrix[i] = ParseDouble(toks[i], "map.matrix");
    }
  }
  else if (key == "bc")
  {
    std::string v = Trim(value);
    if (v != "dirichlet" && v != "neumann")
    {
      throw ConfigError("bc must be 'dirichlet' or 'neumann'");
    }
    config.bc = v;
  }
  else if (key == "gamma")
  {
    std::string v = Trim(value);
    if (v != "norm2")
    {
      double g = ParseDouble(v, "gamma");
      if (g < 0.0)
      {
        throw ConfigError("gamma must be nonnegative");
      }
    }
    config.gamma = v;
  }
  else if (key == "degree")
  {
    config.degree = ParseInt(value, "degree");
    if (config.degree < 0)
    {
      throw ConfigError("degree must be nonnegative");
    }
  }
  else if (key == "degrees")
  {
    config.degrees = ParseDegreeList(value);
  }
  else if (key == "reference")
  {
    config.reference_degree = ParseInt(value, "reference");
    if (config.reference_degree < 0)
    {
      throw ConfigError("reference degree must be nonnegative");
    }
  }
  else if (key == "q")
  {
    config.q = Trim(value);
  }
  else if (key == "k")
  {
    config.k = ParseInt(value, "k");
  }
  else if (key == "ranks")
  {
    config.ranks.clear();
    for (const auto &tok : SplitOn(Trim(value), ','))
    {
      config.ranks.push_back(ParseInt(tok, "ranks"));
    }
    if (config.ranks.empty())
    {
      throw ConfigError("ranks list is empty");
    }
  }
  else if (key == "h")
  {
    config.fd_step = ParseDouble(value, "h");
    if (!(config.fd_step > 0.0))
    {
      throw ConfigError("h must be positive");
    }
  }
  else if (key == "residuals")
  {
    config.residuals = ParseBool(value, "residuals");
  }
  else if (key == "residual_point")
  {
    config.residual_point.clear();
    for (const auto &tok : SplitOn(Trim(value), ','))
    {
      config.residual_point.push_back(ParseDouble(tok, "residual_point"));
    }
  }
  else if (key == "grid")
  {
    config.grid.clear();
    for (const auto &tok : SplitOn(Trim(value), 'x'))
    {
      int c = ParseInt(tok, "grid");
      if (c < 1)
      {
        throw ConfigError("grid counts must be positive");
      }
      config.grid.push_back(c);
    }
  }
  else if (key == "out")
  {
    config.out = Trim(value);
  }
  else if (key == "threads")
  {
    config.threads = ParseInt(value, "threads");
    if (config.threads < 1)
    {
      throw ConfigError("threads must be >= 1");
    }
  }
  else if (key == "dump_system")
  {
    std::string v = Trim(value);
    if (v != "none" && v != "text" && v != "binary")
    {
      throw ConfigError("dump_system must be none, text, or binary");
    }
    config.dump_system = v;
  }
  else
  {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig LoadConfigFile(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    size_t hash = line.find('#');
    if (hash != std::string::npos)
    {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty())
    {
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("malformed config line " + std::to_string(lineno) + " in '" +
                        path + "' (expected key = value)");
    }
    ApplyConfigValue(config, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

BoundaryCondition ParseBc(const std::string &bc)
{
  if (bc == "dirichlet")
  {
    return BoundaryCondition::Dirichlet;
  }
  if (bc == "neumann")
  {
    return BoundaryCondition::Neumann;
  }
  throw ConfigError("bc must be 'dirichlet' or 'neumann'");
}

DomainMap MakeConfiguredMap(const RunConfig &config)
{
  const std::string &name = config.map_name;
  if (name == "identity2d")
  {
    return DomainMap::Identity(2);
  }
  if (name == "identity3d")
  {
    return DomainMap::Identity(3);
  }
  if (name == "planar-quadratic")
  {
    if (!(config.map_a > 0.0 && config.map_a < 1.0))
    {
      throw ConfigError("planar-quadratic requires map.a in (0, 1)");
    }
    return DomainMap::PlanarQuadratic(config.map_a);
  }
  if (name == "ellipsoid")
  {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; i++)
    {
      for (int j = 0; j < 3; j++)
      {
        m(i, j) = config.map_matrix[3 * i + j];
      }
    }
    if (std::abs(m.determinant()) < 1e-14)
    {
      throw ConfigError("ellipsoid map.matrix is singular");
    }
    return DomainMap::Ellipsoid(m);
  }
  if (name == "star")
  {
    return DomainMap::Star();
  }
  throw ConfigError("unknown map '" + name + "'");
}

CoefficientField MakeConfiguredCoefficients(const RunConfig &config, int dim)
{
  if (config.gamma == "norm2")
  {
    return CoefficientField::General(
        dim, [dim](const Vector &) { return Matrix(Matrix::Identity(dim, dim)); },
        [](const Vector &s) { return s.squaredNorm(); }, "laplacian+norm2");
  }
  double g = ParseDouble(config.gamma, "gamma");
  if (g < 0.0)
  {
    throw ConfigError("gamma must be nonnegative");
  }
  return CoefficientField::Isotropic(dim, g);
}

namespace
{

double ResolvedFdStep(const RunConfig &config)
{
  if (config.fd_step > 0.0)
  {
    return config.fd_step;
  }
  return config.map_name == "star" ? 0.01 : 1e-4;
}

std::vector<double> ResolvedResidualPoint(const RunConfig &config, int dim)
{
  if (config.residual_point.empty())
  {
    return std::vector<double>(dim, 0.1);
  }
  if (static_cast<int>(config.residual_point.size()) != dim)
  {
    throw ConfigError("residual_point dimension does not match the map");
  }
  return config.residual_point;
}

int ResolvedReference(const RunConfig &config)
{
  if (config.reference_degree >= 0)
  {
    return config.reference_degree;
  }
  if (config.degrees.empty())
  {
    throw ConfigError("sweep requires a degrees list");
  }
  return *std::max_element(config.degrees.begin(), config.degrees.end()) + 1;
}

json ConfigEcho(const RunConfig &config, int dim)
{
  json j;
  j["command"] = config.command;
  j["map"] = config.map_name;
  if (config.map_name == "planar-quadratic")
  {
    j["map.a"] = config.map_a;
  }
  if (config.map_name == "ellipsoid")
  {
    j["map.matrix"] = config.map_matrix;
  }
  j["bc"] = config.bc;
  j["gamma"] = config.gamma;
  j["q"] = config.q;
  j["k"] = config.k;
  j["out"] = config.out;
  j["threads"] = config.threads;
  j["dim"] = dim;
  if (config.command == "sweep")
  {
    j["degrees"] = config.degrees;
    j["reference"] = ResolvedReference(config);
    j["ranks"] = config.ranks;
    j["h"] = ResolvedFdStep(config);
    j["residuals"] = config.residuals;
    j["residual_point"] = ResolvedResidualPoint(config, dim);
  }
  else
  {
    j["degree"] = config.degree;
    j["q_resolved"] = ResolveQuadratureOrder(config.q, config.degree);
  }
  if (config.command == "solve")
  {
    j["dump_system"] = config.dump_system;
  }
  if (config.command == "sample")
  {
    if (!config.grid.empty())
    {
      j["grid"] = config.grid;
    }
    else
    {
      j["grid"] = (dim == 2) ? std::vector<int>{64, 128} : std::vector<int>{32, 32, 64};
    }
  }
  return j;
}

void WriteJsonFile(const json &j, const std::string &path)
{
  std::FILE *fp = OpenOut(path);
  std::string s = j.dump(2) + "\n";
  std::fwrite(s.data(), 1, s.size(), fp);
  std::fclose(fp);
}

std::string OutPath(const RunConfig &config, const std::string &name)
{
  std::filesystem::create_directories(config.out);
  return (std::filesystem::path(config.out) / name).string();
}

Matrix BuildSampleGrid(int dim, const std::vector<int> &counts)
{
  if (dim == 2)
  {
    int nr = counts[0], na = counts[1];
    Matrix grid(2, nr * na);
    int idx = 0;
    for (int i = 0; i < nr; i++)
    {
      double r = (i + 0.5) / nr;
      for (int j = 0; j < na; j++)
      {
        double a = 2.0 * pi * j / na;
        grid(0, idx) = r * std::cos(a);
        grid(1, idx) = r * std::sin(a);
        idx++;
      }
    }
    return grid;
  }
  int nr = counts[0], np = counts[1], na = counts[2];
  Matrix grid(3, nr * np * na);
  int idx = 0;
  for (int i = 0; i < nr; i++)
  {
    double r = (i + 0.5) / nr;
    for (int j = 0; j < np; j++)
    {
      double polar = pi * (j + 0.5) / np;
      for (int kk = 0; kk < na; kk++)
      {
        double a = 2.0 * pi * kk / na;
        grid(0, idx) = r * std::sin(polar) * std::cos(a);
        grid(1, idx) = r * std::sin(polar) * std::sin(a);
        grid(2, idx) = r * std::cos(polar);
        idx++;
      }
    }
  }
  return grid;
}

}  // namespace

void RunSolve(const RunConfig &config)
{
  if (config.k < 1)
  {
    throw ConfigError("solve requires k >= 1");
  }
  BoundaryCondition bc = ParseBc(config.bc);
  DomainMap map = MakeConfiguredMap(config);
  int dim = map.Dim();
  CoefficientField coeff = MakeConfiguredCoefficients(config, dim);
  int q = ResolveQuadratureOrder(config.q, config.degree);

  GalerkinSystem sys = Assemble(map, coeff, bc, config.degree, q, config.threads);
  int count = std::min(config.k, sys.Size());
  EigenSolution sol = SolveGeneralized(sys, count);
  double cond = MassConditionNumber(sys);

  int rank0 = (bc == BoundaryCondition::Neumann) ? 0 : 1;
  {
    std::FILE *fp = OpenOut(OutPath(config, "eigenvalues.csv"));
    std::fprintf(fp, "k,lambda,residual\n");
    for (int c = 0; c < sol.Count(); c++)
    {
      std::fprintf(fp, "%d,", rank0 + c);
      PrintValue(fp, sol.eigenvalues[c]);
      std::fputc(',', fp);
      PrintValue(fp, sol.residuals[c]);
      std::fputc('\n', fp);
    }
    std::fclose(fp);
  }
  {
    std::FILE *fp = OpenOut(OutPath(config, "eigenfunctions.csv"));
    std::fprintf(fp, "member");
    for (int c = 0; c < sol.Count(); c++)
    {
      std::fprintf(fp, ",alpha_k%d", rank0 + c);
    }
    std::fputc('\n', fp);
    for (int ell = 0; ell < sys.Size(); ell++)
    {
      std::fprintf(fp, "%d", ell);
      for (int c = 0; c < sol.Count(); c++)
      {
        std::fputc(',', fp);
        PrintValue(fp, sol.eigenvectors(ell, c));
      }
      std::fputc('\n', fp);
    }
    std::fclose(fp);
  }
  json j;
  j["config"] = ConfigEcho(config, dim);
  json result;
  result["basis_size"] = sys.Size();
  result["quadrature_order"] = q;
  result["count"] = sol.Count();
  result["eigenvalues"] =
      std::vector<double>(sol.eigenvalues.data(), sol.eigenvalues.data() + sol.Count());
  result["residuals"] =
      std::vector<double>(sol.residuals.data(), sol.residuals.data() + sol.Count());
  result["mass_condition"] = cond;
  result["null_members"] = sol.null_members;
  j["result"] = std::move(result);
  WriteJsonFile(j, OutPath(config, "solve.json"));

  if (config.dump_system != "none")
  {
    bool binary = config.dump_system == "binary";
    WriteSystem(sys, OutPath(config, binary ? "system.bin" : "system.txt"), binary);
  }
}

void RunSweep(const RunConfig &config)
{
  BoundaryCondition bc = ParseBc(config.bc);
  DomainMap map = MakeConfiguredMap(config);
  int dim = map.Dim();
  CoefficientField coeff = MakeConfiguredCoefficients(config, dim);
  if (config.degrees.empty())
  {
    throw ConfigError("sweep requires a degrees list");
  }
  for (int r : config.ranks)
  {
    if ((bc == BoundaryCondition::Dirichlet && r < 1) ||
        (bc == BoundaryCondition::Neumann && r < 0))
    {
      throw ConfigError("rank " + std::to_string(r) + " is not valid for bc " + config.bc);
    }
  }

  ConvergenceOptions opts;
  opts.degrees = config.degrees;
  opts.reference_degree = ResolvedReference(config);
  opts.ranks = config.ranks;
  opts.q_mode = config.q;
  opts.fd_step = ResolvedFdStep(config);
  std::vector<double> pt = ResolvedResidualPoint(config, dim);
  opts.residual_point = Eigen::Map<const Vector>(pt.data(), pt.size());
  opts.residuals = config.residuals;
  opts.threads = config.threads;

  ConvergenceReport report = ConvergenceStudy(map, coeff, bc, opts);
  WriteReportCsv(report, OutPath(config, "table.csv"));
  json j;
  j["config"] = ConfigEcho(config, dim);
  j["report"] = json::parse(ReportJson(report));
  WriteJsonFile(j, OutPath(config, "sweep.json"));
  WriteFigureData(report, config.out);
}

void RunSample(const RunConfig &config)
{
  BoundaryCondition bc = ParseBc(config.bc);
  DomainMap map = MakeConfiguredMap(config);
  int dim = map.Dim();
  CoefficientField coeff = MakeConfiguredCoefficients(config, dim);
  int rank = config.k;
  if ((bc == BoundaryCondition::Dirichlet && rank < 1) ||
      (bc == BoundaryCondition::Neumann && rank < 0))
  {
    throw ConfigError("sample rank " + std::to_string(rank) + " is not valid for bc " +
                      config.bc);
  }
  int col = ModeIndex(bc, rank);
  int q = ResolveQuadratureOrder(config.q, config.degree);
  GalerkinSystem sys = Assemble(map, coeff, bc, config.degree, q, config.threads);
  if (col + 1 > sys.Size())
  {
    throw ConfigError("sample rank exceeds the basis size at this degree");
  }
  EigenSolution sol = SolveGeneralized(sys, col + 1);
  Eigenfunction ef = MakeEigenfunction(sol, col);

  std::vector<int> counts = config.grid;
  if (counts.empty())
  {
    counts = (dim == 2) ? std::vector<int>{64, 128} : std::vector<int>{32, 32, 64};
  }
  if (static_cast<int>(counts.size()) != dim)
  {
    throw ConfigError("grid needs " + std::to_string(dim) + " counts for this map");
  }
  Matrix grid = BuildSampleGrid(dim, counts);

  std::FILE *fp =
      OpenOut(OutPath(config, "eigenfunction_k" + std::to_string(rank) + ".csv"));
  for (int d = 0; d < dim; d++)
  {
    std::fprintf(fp, "%ss%d", d ? "," : "", d + 1);
  }
  std::fprintf(fp, ",value\n");
  Vector vals = ef.Values(grid);
  for (int i = 0; i < grid.cols(); i++)
  {
    Vector s = map.MapPoint(grid.col(i));
    for (int d = 0; d < dim; d++)
    {
      if (d)
      {
        std::fputc(',', fp);
      }
      PrintValue(fp, s[d]);
    }
    std::fputc(',', fp);
    PrintValue(fp, vals[i]);
    std::fputc('\n', fp);
  }
  std::fclose(fp);

  json j;
  j["config"] = ConfigEcho(config, dim);
  j["result"] = {{"rank", rank},
                 {"lambda", sol.eigenvalues[col]},
                 {"basis_size", sys.Size()},
                 {"quadrature_order", q}};
  WriteJsonFile(j, OutPath(config, "sample.json"));
}

void Run(const RunConfig &config)
{
  if (config.command == "solve")
  {
    RunSolve(config);
  }
  else if (config.command == "sweep")
  {
    RunSweep(config);
  }
  else if (config.command == "sample")
  {
    RunSample(config);
  }
  else
  {
    throw ConfigError("unknown command '" + config.command + "'");
  }
}

}  // namespace specmap
