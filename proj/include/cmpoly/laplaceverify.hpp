#pragma once

// Numerical checks of explicit Laplace-transform representations of
// E_{2,3}^(-beta), E_{2,n}^(-beta), det(A)^(-beta) and the two-variable
// series kernel.

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "cmpoly/exactalg.hpp"

namespace cmpoly {

struct IntegralCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;  // |lhs - rhs| / max(|lhs|, tiny)
  std::string method;  // "quadrature", "quadrature_boundary" or "monte_carlo"
  std::size_t samples_or_cells = 0;
  double error_estimate = 0;  // relative: quadrature estimate or Monte Carlo standard error
  double tol = 0;
  bool passed = false;  // rel_err < tol (Monte Carlo: |lhs - rhs| <= 3 SE as well)
};

struct QuadOptions {
  /// Truncates the radial variable (sum of coordinates) at radial_cutoff.
  double radial_cutoff = std::numeric_limits<double>::infinity();
  std::size_t mc_samples = 1 << 18;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// 2(t1 t2 + t1 t3 + t2 t3) - (t1^2 + t2^2 + t3^2) when sqrt(t1), sqrt(t2),
/// sqrt(t3) form a nondegenerate triangle, else 0. Throws kDomain on
/// negative input.
double heron_kernel(double t1, double t2, double t3);

/// E_{2,3}(x)^(-beta) against its integral over t in (0, inf)^3 of
/// exp(-t.x) P(t)_+^(beta - 3/2), iterated over the barycentric simplex.
/// Needs beta > 1/2 + 1e-3 and x > 0. Throws kTolerance when the quadrature
/// error estimate exceeds tol.
IntegralCheck verify_E23(double beta, std::span<const double> x, double tol, const QuadOptions& opts = {});

/// E_{2,n}(x)^(-beta) against the integral over the cone K > 0 with
/// K(y) = E_{2,n}(y) - (n-2)/2 |y|^2. n <= 4: 2-D quadrature; n >= 5: Monte
/// Carlo. beta = (n-2)/2 exactly uses the boundary limit of the measure;
/// otherwise needs beta > (n-2)/2 + 1e-3. Requires x in the dual cone.
IntegralCheck verify_E2n(std::size_t n, double beta, std::span<const double> x, double tol,
                         const QuadOptions& opts = {});

/// (u+v)^(-beta) exp(-lambda u v / (u+v)) against its representation:
/// beta = 1/2 by the 1-D Gaussian integral, beta > 1/2 by the 2-D density.
IntegralCheck verify_series_kernel(double beta, double lambda, double u, double v, double tol);

/// (2 pi)^((n-r)/2) prod_{j<r} Gamma(alpha - j d/2). Throws kDomain at a pole
/// or when n != r + d r (r-1)/2.
double gamma_omega(double alpha, std::size_t r, std::size_t d, std::size_t n);

/// det(A)^(-beta) for a 2x2 positive-definite A against the trace integral
/// over positive-definite B. Needs beta > 1/2.
IntegralCheck verify_det_integral_m2(double beta, const RatMatrix& a, double tol, const QuadOptions& opts = {});

std::string integral_check_to_json(const IntegralCheck& c, std::string_view formula);
/// formula,lhs,rhs,rel_err,method,samples_or_cells,error_estimate,passed
std::string integral_check_csv_header();
std::string integral_check_to_csv(const IntegralCheck& c, std::string_view formula);

}  // namespace cmpoly
