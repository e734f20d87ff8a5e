// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/assembly.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "specmap/quadrature.hpp"

namespace specmap
{

namespace
{

QuadratureRule RuleFor(int dim, int q)
{
  return dim == 2 ? DiskRule(q) : BallRule(q);
}

void AccumulateRange(const QuadratureRule &rule, const DomainMap &map,
                     const CoefficientField &coeff, BoundaryCondition bc,
                     const PolynomialBasis &basis, int lo, int hi, Matrix &g, Matrix &m)
{
  Vector v;
  Matrix grad;
  for (int i = lo; i < hi; i++)
  {
    Vector x = rule.Node(i);
    TransformedCoefficients tc = TransformCoefficients(map, coeff, x);
    basis.EvaluateTrial(bc, x, v, &grad);
    double w = rule.weights[i] * tc.weight;

    m.selfadjointView<Eigen::Lower>().rankUpdate(v, w);

    Eigen::LLT<Matrix> llt(tc.a_tilde);
    if (llt.info() != Eigen::Success)
    {
      throw Error("transformed coefficient matrix is not positive definite at "
                  "quadrature node " +
                  std::to_string(i));
    }
    Matrix b = grad * llt.matrixL();
    g.selfadjointView<Eigen::Lower>().rankUpdate(b, w);
    if (tc.gamma_tilde != 0.0)
    {
      g.selfadjointView<Eigen::Lower>().rankUpdate(v, w * tc.gamma_tilde);
    }
  }
}

}  // namespace

GalerkinSystem Assemble(const DomainMap &map, const CoefficientField &coeff,
                        BoundaryCondition bc, int degree, int quadrature_order,
                        int threads)
{
  if (degree < 0)
  {
    throw Error("assembly requires degree >= 0");
  }
  if (quadrature_order < 1)
  {
    throw Error("assembly requires quadrature order >= 1");
  }
  if (map.Dim() != coeff.Dim())
  {
    throw Error("map and coefficient dimensions differ");
  }
  int dim = map.Dim();
  QuadratureRule rule = RuleFor(dim, quadrature_order);
  map.Validate(rule);
  auto basis = MakeBasis(dim, degree);
  int n = basis->Size();

  GalerkinSystem sys;
  sys.degree = degree;
  sys.dim = dim;
  sys.bc = bc;
  sys.map_name = map.Name();
  sys.coefficient_desc = coeff.Description();
  sys.quadrature_order = quadrature_order;

  // The node range is split into fixed-size chunks whose partial sums are
  // merged into the global matrices in ascending chunk order. Both the chunk
  // boundaries and the merge order are independent of the thread count, so
  // the assembled matrices are bit-identical for any `threads` value.
  constexpr int kChunk = 256;
  const int count = rule.Count();
  const int n_chunks = (count + kChunk - 1) / kChunk;
  const int nt = std::max(1, std::min(threads, n_chunks));

  Matrix g = Matrix::Zero(n, n), m = Matrix::Zero(n, n);
  if (nt == 1)
  {
    Matrix pg, pm;
    for (int c = 0; c < n_chunks; c++)
    {
      pg.setZero(n, n);
      pm.setZero(n, n);
      AccumulateRange(rule, map, coeff, bc, *basis, c * kChunk,
                      std::min(count, (c + 1) * kChunk), pg, pm);
      g += pg;
      m += pm;
    }
  }
  else
  {
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<int> next_chunk{0};
    int next_merge = 0;
    bool failed = false;
    std::map<int, std::pair<Matrix, Matrix>> pending;
    std::vector<std::exception_ptr> errors(nt);
    // Bound the number of computed-but-unmerged chunks so memory stays at
    // O(threads) partial matrices.
    const int window = 2 * nt + 2;

    auto worker = [&](int tid)
    {
      try
      {
        Matrix pg, pm;
        for (;;)
        {
          const int c = next_chunk.fetch_add(1);
          if (c >= n_chunks)
          {
            break;
          }
          {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return failed || c < next_merge + window; });
            if (failed)
            {
              break;
            }
          }
          pg.setZero(n, n);
          pm.setZero(n, n);
          AccumulateRange(rule, map, coeff, bc, *basis, c * kChunk,
                          std::min(count, (c + 1) * kChunk), pg, pm);
          std::unique_lock<std::mutex> lock(mu);
          pending.emplace(c, std::make_pair(std::move(pg), std::move(pm)));
          while (!pending.empty() && pending.begin()->first == next_merge)
          {
            g += pending.begin()->second.first;
            m += pending.begin()->second.second;
            pending.erase(pending.begin());
            next_merge++;
          }
          cv.notify_all();
        }
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(mu);
        errors[tid] = std::current_exception();
        failed = true;
        cv.notify_all();
      }
    };

    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; t++)
    {
      pool.emplace_back(worker, t);
    }
    for (auto &t : pool)
    {
      t.join();
    }
    for (auto &e : errors)
    {
      if (e)
      {
        std::rethrow_exception(e);
      }
    }
  }
  sys.stiffness = g.selfadjointView<Eigen::Lower>();
  sys.mass = m.selfadjointView<Eigen::Lower>();
  return sys;
}

Vector SolveSource(const GalerkinSystem &system, const DomainMap &map,
                   const std::function<double(const Vector &)> &f, int quadrature_order)
{
  if (map.Dim() != system.dim)
  {
    throw Error("map dimension does not match system");
  }
  QuadratureRule rule = RuleFor(system.dim, quadrature_order);
  auto basis = MakeBasis(system.dim, system.degree);
  int n = basis->Size();
  if (n != system.Size())
  {
    throw Error("system size does not match basis");
  }
  Vector b = Vector::Zero(n);
  Vector v;
  for (int i = 0; i < rule.Count(); i++)
  {
    Vector x = rule.Node(i);
    DomainMap::JacobianData jd = map.Jacobian(x);
    double fx = f(map.MapPoint(x));
    if (!std::isfinite(fx))
    {
      throw QuadratureError("source term is not finite at quadrature node " +
                            std::to_string(i));
    }
    basis->EvaluateTrial(system.bc, x, v, nullptr);
    b += (rule.weights[i] * jd.abs_det * fx) * v;
  }

  Eigen::LDLT<Matrix> ldlt(system.stiffness);
  Vector alpha = ldlt.solve(b);
  double resid = (system.stiffness * alpha - b).norm();
  double scale = system.stiffness.norm() * alpha.norm() + b.norm();
  if (ldlt.info() != Eigen::Success || !(resid <= 1e-8 * (scale + 1.0)))
  {
    throw Error("stiffness matrix is singular on the trial space (a pure Neumann "
                "problem with gamma = 0 has no unique solution; add a zero-order "
                "term, e.g. shift gamma by a positive constant, and retry)");
  }
  return alpha;
}

GalerkinSystem Shifted(const GalerkinSystem &system, double c)
{
  GalerkinSystem out = system;
  out.stiffness += c * system.mass;
  out.coefficient_desc += "+shift(" + std::to_string(c) + ")";
  return out;
}

double MassConditionNumber(const GalerkinSystem &system)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(system.mass, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0))
  {
    return std::numeric_limits<double>::infinity();
  }
  return hi / lo;
}

namespace
{

void WriteTriangle(std::FILE *fp, const Matrix &m, bool binary)
{
  int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j <= i; j++)
    {
      if (binary)
      {
        double v = m(i, j);
        std::fwrite(&v, sizeof(double), 1, fp);
      }
      else
      {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
        std::fputs(buf, fp);
        std::fputc(j == i ? '\n' : ' ', fp);
      }
    }
  }
}

}  // namespace

void WriteSystem(const GalerkinSystem &system, const std::string &path, bool binary)
{
  std::FILE *fp = std::fopen(path.c_str(), binary ? "wb" : "w");
  if (!fp)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  std::fprintf(fp, "specmap-system 1\n");
  std::fprintf(fp, "dim %d\n", system.dim);
  std::fprintf(fp, "degree %d\n", system.degree);
  std::fprintf(fp, "bc %s\n", ToString(system.bc));
  std::fprintf(fp, "map %s\n", system.map_name.c_str());
  std::fprintf(fp, "coefficients %s\n", system.coefficient_desc.c_str());
  std::fprintf(fp, "quadrature %d\n", system.quadrature_order);
  std::fprintf(fp, "size %d\n", system.Size());
  std::fprintf(fp, "format %s\n", binary ? "binary" : "text");
  WriteTriangle(fp, system.stiffness, binary);
  WriteTriangle(fp, system.mass, binary);
  std::fclose(fp);
}

namespace
{

Matrix ReadTriangleText(std::istream &in, int n)
{
  Matrix m(n, n);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j <= i; j++)
    {
      double v;
      if (!(in >> v))
      {
        throw Error("truncated system file");
      }
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

Matrix ReadTriangleBinary(std::istream &in, int n)
{
  Matrix m(n, n);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j <= i; j++)
    {
      double v;
      in.read(reinterpret_cast<char *>(&v), sizeof(double));
      if (!in)
      {
        throw Error("truncated system file");
      }
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

}  // namespace

GalerkinSystem ReadSystem(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Error("cannot open '" + path + "'");
  }
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "specmap-system" || version != 1)
  {
    throw Error("'" + path + "' is not a system file");
  }
  GalerkinSystem sys;
  std::string key, fmt, bc;
  int size = 0;
  in >> key >> sys.dim;
  in >> key >> sys.degree;
  in >> key >> bc;
  in >> key >> sys.map_name;
  in >> key >> sys.coefficient_desc;
  in >> key >> sys.quadrature_order;
  in >> key >> size;
  in >> key >> fmt;
  if (!in)
  {
    throw Error("malformed system file header");
  }
  sys.bc = (bc == "dirichlet") ? BoundaryCondition::Dirichlet : BoundaryCondition::Neumann;
  if (fmt == "text")
  {
    sys.stiffness = ReadTriangleText(in, size);
    sys.mass = ReadTriangleText(in, size);
  }
  else
  {
    in.get();  // newline after the header
    sys.stiffness = ReadTriangleBinary(in, size);
    sys.mass = ReadTriangleBinary(in, size);
  }
  return sys;
}

}  // namespace specmap
