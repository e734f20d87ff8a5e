// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include <json.hpp>

#include "specmap/quadrature.hpp"

namespace specmap
{

using std::numbers::pi;

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

QuadratureRule RuleFor(int dim, int q)
{
  return dim == 2 ? DiskRule(q) : BallRule(q);
}

}  // namespace

Vector EigenvalueDiffs(const Vector &values)
{
  if (values.size() < 1)
  {
    throw Error("eigenvalue sequence is empty");
  }
  Vector out(values.size() - 1);
  for (int i = 0; i + 1 < values.size(); i++)
  {
    out[i] = std::abs(values[i + 1] - values[i]);
  }
  return out;
}

Matrix ReferenceGrid(ReferenceDomain domain)
{
  if (domain == ReferenceDomain::Disk)
  {
    const int nr = 64, na = 128;
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
  const int nr = 32, np = 32, na = 64;
  Matrix grid(3, nr * np * na);
  int idx = 0;
  for (int i = 0; i < nr; i++)
  {
    double r = (i + 0.5) / nr;
    for (int j = 0; j < np; j++)
    {
      double polar = pi * (j + 0.5) / np;
      double ct = std::cos(polar), st = std::sin(polar);
      for (int k = 0; k < na; k++)
      {
        double a = 2.0 * pi * k / na;
        grid(0, idx) = r * st * std::cos(a);
        grid(1, idx) = r * st * std::sin(a);
        grid(2, idx) = r * ct;
        idx++;
      }
    }
  }
  return grid;
}

double EigenfunctionDiff(const Eigenfunction &a, const Eigenfunction &b, const Matrix &grid)
{
  if (a.Dim() != b.Dim() || grid.rows() != a.Dim())
  {
    throw Error("eigenfunction comparison dimension mismatch");
  }
  return (a.Values(grid) - b.Values(grid)).cwiseAbs().maxCoeff();
}

double ResidualAtPoint(const std::function<double(const Vector &)> &u, double lambda,
                       const Vector &s, double h)
{
  if (!(h > 0.0))
  {
    throw Error("residual step must be positive");
  }
  double center = u(s);
  double lap = 0.0;
  for (int d = 0; d < s.size(); d++)
  {
    Vector sp = s, sm = s;
    sp[d] += h;
    sm[d] -= h;
    lap += (u(sp) + u(sm) - 2.0 * center) / (h * h);
  }
  return std::abs(-lap - lambda * center);
}

double ResidualAtPoint(const Eigenfunction &u, double lambda, const DomainMap &map,
                       const Vector &s, double h)
{
  return ResidualAtPoint([&](const Vector &p) { return u.ValuePhysical(map, p); }, lambda,
                         s, h);
}

AngleResult L2Angle(const Eigenfunction &a, const Eigenfunction &b, const DomainMap &map,
                    int quadrature_order)
{
  if (a.Dim() != b.Dim() || a.Dim() != map.Dim())
  {
    throw Error("angle dimension mismatch");
  }
  QuadratureRule rule = RuleFor(map.Dim(), quadrature_order);
  double ip = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < rule.Count(); i++)
  {
    Vector x = rule.Node(i);
    double w = rule.weights[i] * map.Jacobian(x).abs_det;
    double va = a.Value(x), vb = b.Value(x);
    ip += w * va * vb;
    na += w * va * va;
    nb += w * vb * vb;
  }
  if (!(na > 0.0) || !(nb > 0.0))
  {
    throw Error("cannot measure the angle of a zero function");
  }
  double cosine = std::abs(ip) / std::sqrt(na * nb);
  return {std::acos(std::min(cosine, 1.0)), cosine};
}

int ResolveQuadratureOrder(const std::string &mode, int degree)
{
  if (degree < 0)
  {
    throw Error("degree must be nonnegative");
  }
  std::string s = mode;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s == "auto")
  {
    return degree + 2;
  }
  if (s == "n")
  {
    return std::max(degree, 2);
  }
  auto all_digits = [](const std::string &t)
  { return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](unsigned char c) { return std::isdigit(c); }); };
  if (s.rfind("n+", 0) == 0 && all_digits(s.substr(2)))
  {
    return degree + std::stoi(s.substr(2));
  }
  if (all_digits(s))
  {
    int q = std::stoi(s);
    if (q >= 1)
    {
      return q;
    }
  }
  throw ConfigError("invalid quadrature order '" + mode +
                    "' (expected auto, n, n+K, or a positive integer)");
}

namespace
{

// Values of R expansions sharing one basis at many points, one basis
// evaluation per point. coeffs is N x R; the result is R x npoints.
Matrix ExpansionValues(const PolynomialBasis &basis, BoundaryCondition bc,
                       const Matrix &coeffs, const Matrix &points)
{
  Matrix out(coeffs.cols(), points.cols());
  Vector v;
  for (int i = 0; i < points.cols(); i++)
  {
    basis.EvaluateTrial(bc, points.col(i), v, nullptr);
    out.col(i) = coeffs.transpose() * v;
  }
  return out;
}

struct DegreeData
{
  int basis_size = 0;
  int quadrature_order = 0;
  std::vector<bool> have;
  std::vector<double> lambda;
  std::vector<double> residual_bound;
  std::vector<Vector> coefficients;
  Matrix grid_values;  // ranks x grid points
  Matrix node_values;  // ranks x angle-rule nodes
};

}  // namespace

ConvergenceReport ConvergenceStudy(const DomainMap &map, const CoefficientField &coeff,
                                   BoundaryCondition bc, const ConvergenceOptions &options)
{
  int dim = map.Dim();
  std::vector<int> degrees = options.degrees;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  if (degrees.empty())
  {
    throw ConfigError("degree sweep is empty");
  }
  if (degrees.front() < 0)
  {
    throw ConfigError("sweep degrees must be nonnegative");
  }
  int ref = options.reference_degree;
  if (ref < degrees.back())
  {
    throw ConfigError("reference degree must be at least the largest sweep degree");
  }
  if (options.ranks.empty())
  {
    throw ConfigError("rank list is empty");
  }
  int min_rank = bc == BoundaryCondition::Dirichlet ? 1 : 0;
  int needed = 0;
  for (int r : options.ranks)
  {
    if (r < min_rank)
    {
      throw ConfigError("mode rank " + std::to_string(r) + " is below the smallest rank " +
                        std::to_string(min_rank) + " for this boundary condition");
    }
    needed = std::max(needed, ModeIndex(bc, r) + 1);
  }
  Vector residual_point = options.residual_point;
  if (residual_point.size() == 0)
  {
    residual_point = Vector::Constant(dim, 0.1);
  }
  if (residual_point.size() != dim || residual_point.norm() > 1.0)
  {
    throw ConfigError("residual point must lie inside the reference domain");
  }

  int nranks = static_cast<int>(options.ranks.size());
  Matrix grid = ReferenceGrid(DomainOfDimension(dim));

  QuadratureRule arule = RuleFor(dim, ref + 2);
  Vector wdet(arule.Count());
  for (int i = 0; i < arule.Count(); i++)
  {
    wdet[i] = arule.weights[i] * map.Jacobian(arule.Node(i)).abs_det;
  }

  std::vector<int> solve_list = degrees;
  if (std::find(solve_list.begin(), solve_list.end(), ref) == solve_list.end())
  {
    solve_list.push_back(ref);
  }

  std::map<int, DegreeData> data;
  for (int n : solve_list)
  {
    int q = ResolveQuadratureOrder(options.q_mode, n);
    GalerkinSystem sys = Assemble(map, coeff, bc, n, q, options.threads);
    int count = std::min(needed, sys.Size());
    EigenSolution sol = SolveGeneralized(sys, count);
    auto basis = MakeBasis(dim, n);

    DegreeData dd;
    dd.basis_size = sys.Size();
    dd.quadrature_order = q;
    dd.have.assign(nranks, false);
    dd.lambda.assign(nranks, nan);
    dd.residual_bound.assign(nranks, nan);
    dd.coefficients.resize(nranks);
    std::vector<int> cols;
    for (int ri = 0; ri < nranks; ri++)
    {
      int col = ModeIndex(bc, options.ranks[ri]);
      if (col < sol.Count())
      {
        dd.have[ri] = true;
        dd.lambda[ri] = sol.eigenvalues[col];
        dd.residual_bound[ri] = sol.residuals[col];
        dd.coefficients[ri] = sol.eigenvectors.col(col);
        cols.push_back(ri);
      }
    }
    Matrix cmat(sys.Size(), cols.size());
    for (size_t c = 0; c < cols.size(); c++)
    {
      cmat.col(c) = dd.coefficients[cols[c]];
    }
    Matrix gv = ExpansionValues(*basis, bc, cmat, grid);
    Matrix nv = ExpansionValues(*basis, bc, cmat, arule.nodes);
    dd.grid_values = Matrix::Constant(nranks, grid.cols(), nan);
    dd.node_values = Matrix::Constant(nranks, arule.Count(), nan);
    for (size_t c = 0; c < cols.size(); c++)
    {
      dd.grid_values.row(cols[c]) = gv.row(c);
      dd.node_values.row(cols[c]) = nv.row(c);
    }
    data.emplace(n, std::move(dd));
  }

  const DegreeData &rd = data.at(ref);
  ConvergenceReport report;
  report.map_name = map.Name();
  report.coefficient_desc = coeff.Description();
  report.bc = bc;
  report.dim = dim;
  report.q_mode = options.q_mode;
  report.fd_step = options.fd_step;
  report.residual_point = residual_point;
  report.ranks = options.ranks;
  report.reference_degree = ref;
  report.reference_quadrature_order = rd.quadrature_order;
  report.reference_lambda = rd.lambda;

  Vector s_phys = map.MapPoint(residual_point);

  const DegreeData *prev = nullptr;
  for (int n : degrees)
  {
    const DegreeData &dd = data.at(n);
    ConvergenceRow row;
    row.degree = n;
    row.basis_size = dd.basis_size;
    row.quadrature_order = dd.quadrature_order;
    row.lambda = dd.lambda;
    row.residual_bound = dd.residual_bound;
    row.dlam_ref.assign(nranks, nan);
    row.angle_ref.assign(nranks, nan);
    row.cosine_raw.assign(nranks, nan);
    row.lambda_step.assign(nranks, nan);
    row.efun_step.assign(nranks, nan);
    if (options.residuals)
    {
      row.point_residual.assign(nranks, nan);
    }
    for (int ri = 0; ri < nranks; ri++)
    {
      if (!dd.have[ri])
      {
        continue;
      }
      if (rd.have[ri])
      {
        row.dlam_ref[ri] = std::abs(dd.lambda[ri] - rd.lambda[ri]);
        double ip = 0.0, na = 0.0, nb = 0.0;
        for (int i = 0; i < wdet.size(); i++)
        {
          double va = dd.node_values(ri, i), vb = rd.node_values(ri, i);
          ip += wdet[i] * va * vb;
          na += wdet[i] * va * va;
          nb += wdet[i] * vb * vb;
        }
        double cosine = std::abs(ip) / std::sqrt(na * nb);
        row.cosine_raw[ri] = cosine;
        row.angle_ref[ri] = std::acos(std::min(cosine, 1.0));
      }
      if (options.residuals)
      {
        auto basis = MakeBasis(dim, n);
        Eigenfunction ef(basis, bc, dd.coefficients[ri]);
        row.point_residual[ri] =
            ResidualAtPoint(ef, dd.lambda[ri], map, s_phys, options.fd_step);
      }
      if (prev && prev->have[ri])
      {
        row.lambda_step[ri] = std::abs(dd.lambda[ri] - prev->lambda[ri]);
        row.efun_step[ri] =
            (dd.grid_values.row(ri) - prev->grid_values.row(ri)).cwiseAbs().maxCoeff();
      }
    }
    report.rows.push_back(std::move(row));
    prev = &dd;
  }
  return report;
}

namespace
{

void PrintValue(std::FILE *fp, double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::fputs(buf, fp);
}

}  // namespace

void WriteReportCsv(const ConvergenceReport &report, const std::string &path)
{
  std::FILE *fp = std::fopen(path.c_str(), "w");
  if (!fp)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  bool residuals = !report.rows.empty() && !report.rows.front().point_residual.empty();
  std::fprintf(fp, "n,N_n");
  for (int r : report.ranks)
  {
    std::fprintf(fp, ",dlam_%d", r);
  }
  for (int r : report.ranks)
  {
    std::fprintf(fp, ",angle_%d", r);
  }
  if (residuals)
  {
    for (int r : report.ranks)
    {
      std::fprintf(fp, ",R_%d", r);
    }
  }
  std::fputc('\n', fp);
  for (const auto &row : report.rows)
  {
    std::fprintf(fp, "%d,%d", row.degree, row.basis_size);
    for (size_t ri = 0; ri < report.ranks.size(); ri++)
    {
      std::fputc(',', fp);
      PrintValue(fp, row.dlam_ref[ri]);
    }
    for (size_t ri = 0; ri < report.ranks.size(); ri++)
    {
      std::fputc(',', fp);
      PrintValue(fp, row.angle_ref[ri]);
    }
    if (residuals)
    {
      for (size_t ri = 0; ri < report.ranks.size(); ri++)
      {
        std::fputc(',', fp);
        PrintValue(fp, row.point_residual[ri]);
      }
    }
    std::fputc('\n', fp);
  }
  std::fclose(fp);
}

std::string ReportJson(const ConvergenceReport &report)
{
  nlohmann::json j;
  j["map"] = report.map_name;
  j["coefficients"] = report.coefficient_desc;
  j["bc"] = ToString(report.bc);
  j["dim"] = report.dim;
  j["q_mode"] = report.q_mode;
  j["fd_step"] = report.fd_step;
  j["residual_point"] =
      std::vector<double>(report.residual_point.data(),
                          report.residual_point.data() + report.residual_point.size());
  j["ranks"] = report.ranks;
  j["reference"] = {{"degree", report.reference_degree},
                    {"quadrature_order", report.reference_quadrature_order},
                    {"lambda", report.reference_lambda}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : report.rows)
  {
    nlohmann::json r;
    r["degree"] = row.degree;
    r["basis_size"] = row.basis_size;
    r["quadrature_order"] = row.quadrature_order;
    r["lambda"] = row.lambda;
    r["residual_bound"] = row.residual_bound;
    r["dlam_ref"] = row.dlam_ref;
    r["angle_ref"] = row.angle_ref;
    r["cosine_raw"] = row.cosine_raw;
    if (!row.point_residual.empty())
    {
      r["point_residual"] = row.point_residual;
    }
    r["lambda_step"] = row.lambda_step;
    r["efun_step"] = row.efun_step;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void WriteReportJson(const ConvergenceReport &report, const std::string &path)
{
  std::FILE *fp = std::fopen(path.c_str(), "w");
  if (!fp)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  std::string s = ReportJson(report);
  std::fwrite(s.data(), 1, s.size(), fp);
  std::fclose(fp);
}

void WriteFigureData(const ConvergenceReport &report, const std::string &directory)
{
  for (size_t ri = 0; ri < report.ranks.size(); ri++)
  {
    int rank = report.ranks[ri];
    auto write_series = [&](const std::string &stem, auto getter)
    {
      std::string path = directory + "/fig_" + stem + "_k" + std::to_string(rank) + ".csv";
      std::FILE *fp = std::fopen(path.c_str(), "w");
      if (!fp)
      {
        throw Error("cannot open '" + path + "' for writing");
      }
      std::fprintf(fp, "n,value\n");
      for (const auto &row : report.rows)
      {
        double v = getter(row);
        if (std::isnan(v))
        {
          continue;
        }
        std::fprintf(fp, "%d,", row.degree);
        PrintValue(fp, v);
        std::fputc('\n', fp);
      }
      std::fclose(fp);
    };
    write_series("lambda_diff", [&](const ConvergenceRow &r) { return r.lambda_step[ri]; });
    write_series("efun_diff", [&](const ConvergenceRow &r) { return r.efun_step[ri]; });
    if (!report.rows.empty() && !report.rows.front().point_residual.empty())
    {
      write_series("residual",
                   [&](const ConvergenceRow &r) { return r.point_residual[ri]; });
    }
  }
}

}  // namespace specmap
