// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace weaksym {

/// Gauss-Legendre rule with n points on [0,1]; exact for polynomials of
/// degree 2n-1. Nodes are found by Newton iteration from the Chebyshev
/// initial guess, which converges to machine precision in a few steps.
struct QuadratureRule1D {
  std::vector<double> points;
  std::vector<double> weights;

  explicit QuadratureRule1D(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("quadrature: order out of range");
    points.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
      // Root of the Legendre polynomial P_n on [-1,1].
      double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        // Evaluate P_n and P_n' by the three-term recurrence.
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      points[i] = 0.5 * (x + 1);
      weights[i] = 1.0 / ((1 - x * x) * dp * dp);
    }
  }
};

/// Tensor-product rule on [0,1]^dim built from the same 1D rule per axis.
struct QuadratureRule {
  int dim;
  std::vector<std::array<double, 3>> points;  // unused slots are 0
  std::vector<double> weights;

  QuadratureRule(int dim_, int n_per_axis) : dim(dim_) {
    const QuadratureRule1D line(n_per_axis);
    const int n = n_per_axis;
    int total = 1;
    for (int a = 0; a < dim; ++a) total *= n;
    points.reserve(total);
    weights.reserve(total);
    for (int q = 0; q < total; ++q) {
      std::array<double, 3> p{0, 0, 0};
      double w = 1;
      int rest = q;
      for (int a = 0; a < dim; ++a) {
        const int ia = rest % n;
        rest /= n;
        p[a] = line.points[ia];
        w *= line.weights[ia];
      }
      points.push_back(p);
      weights.push_back(w);
    }
  }

  std::size_t size() const { return points.size(); }
};

}  // namespace weaksym
