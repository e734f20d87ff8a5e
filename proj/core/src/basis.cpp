// Copyright (c) the specmap developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "specmap/basis.hpp"

#include <map>
#include <mutex>

#include "specmap/ball_basis.hpp"
#include "specmap/disk_basis.hpp"

namespace specmap
{

void PolynomialBasis::EvaluateTrial(BoundaryCondition bc, const Vector &x, Vector &values,
                                    Matrix *gradients) const
{
  Evaluate(x, values, gradients);
  if (bc == BoundaryCondition::Neumann)
  {
    return;
  }
  double factor = 1.0 - x.squaredNorm();
  if (gradients)
  {
    *gradients = factor * (*gradients) - 2.0 * values * x.transpose();
  }
  values *= factor;
}

std::shared_ptr<const PolynomialBasis> MakeBasis(int dim, int degree)
{
  if (dim != 2 && dim != 3)
  {
    throw Error("basis dimension must be 2 or 3");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PolynomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it != cache.end())
  {
    return it->second;
  }
  std::shared_ptr<const PolynomialBasis> basis;
  if (dim == 2)
  {
    basis = std::make_shared<DiskBasis>(degree);
  }
  else
  {
    basis = std::make_shared<BallBasis>(degree);
  }
  cache[key] = basis;
  return basis;
}

}  // namespace specmap
