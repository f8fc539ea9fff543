#include "cmpoly/laplaceverify.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "cmpoly/error.hpp"
#include "cmpoly/quadform.hpp"
#include "json_util.hpp"

namespace cmpoly {

namespace {

using std::numbers::pi;
namespace bq = boost::math::quadrature;

constexpr double kQuadTol = 1e-12;
constexpr double kBetaMargin = 1e-3;

// Integral of a^(2 beta - 1) exp(-a L) over 0 < a < cutoff.
double radial(double beta, double L, double cutoff) {
  if (std::isinf(cutoff)) return std::exp(std::lgamma(2 * beta) - 2 * beta * std::log(L));
  return boost::math::tgamma_lower(2 * beta, cutoff * L) * std::pow(L, -2 * beta);
}

double sphere_area(std::size_t k) {  // |S^k|
  const double h = (static_cast<double>(k) + 1) / 2;
  return 2 * std::pow(pi, h) / std::tgamma(h);
}

IntegralCheck finish(double lhs, double rhs, std::string method, std::size_t cells, double err_rel, double tol) {
  IntegralCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.rel_err = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::numeric_limits<double>::min());
  c.method = std::move(method);
  c.samples_or_cells = cells;
  c.error_estimate = err_rel;
  c.tol = tol;
  c.passed = c.rel_err < tol;
  if (err_rel > tol)
    throw Error(ErrorCode::kTolerance, "integration error estimate " + std::to_string(err_rel) +
                                           " exceeds tolerance " + std::to_string(tol));
  return c;
}

// Nested integral with error bookkeeping: outer error plus the worst inner
// error, both relative.
struct Nested {
  std::size_t evals = 0;
  double inner_err = 0;

  /// Integral of sin^p(phi) g(cos phi) over (0, pi), folded onto (0, pi/2)
  /// so that the only endpoint singularity sits at 0.
  template <class G>
  double sin_power(double p, G g) {
    bq::tanh_sinh<double> ts;
    double err = 0, l1 = 0;
    auto f = [&](double phi) {
      ++evals;
      const double c = std::cos(phi);
      return std::pow(std::sin(phi), p) * (g(c) + g(-c));
    };
    const double v = ts.integrate(f, 0.0, pi / 2, kQuadTol, &err, &l1);
    if (l1 > 0) inner_err = std::max(inner_err, err / l1);
    return v;
  }
};

void check_positive(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0)) throw Error(ErrorCode::kDomain, "x must be strictly positive");
}

double e2(std::span<const double> x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s += x[i] * x[j];
  return s;
}

}  // namespace

double heron_kernel(double t1, double t2, double t3) {
  if (t1 < 0 || t2 < 0 || t3 < 0) throw Error(ErrorCode::kDomain, "heron_kernel needs nonnegative arguments");
  const double a = std::sqrt(t1), b = std::sqrt(t2), c = std::sqrt(t3);
  if (!(a + b > c && a + c > b && b + c > a)) return 0.0;
  const double p = 2 * (t1 * t2 + t1 * t3 + t2 * t3) - (t1 * t1 + t2 * t2 + t3 * t3);
  return std::max(p, 0.0);
}

IntegralCheck verify_E23(double beta, std::span<const double> x, double tol, const QuadOptions& opts) {
  if (x.size() != 3) throw Error(ErrorCode::kInvalidArgument, "verify_E23 needs a 3-vector");
  if (!(beta > 0.5 + kBetaMargin)) throw Error(ErrorCode::kDomain, "verify_E23 needs beta > 1/2 + 1e-3");
  check_positive(x);
  const double lhs = std::pow(e2(x), -beta);

  // t = r theta with theta on the simplex; {P > 0} is the inscribed ellipse
  // theta1 = (1 - cos chi)/3, theta2 = (1 - theta1)/2 - h cos phi,
  // h = sin chi / (2 sqrt 3), where P(theta) = 4 h^2 sin^2 phi.
  Nested nest;
  const double s3 = std::sqrt(3.0);
  auto inner = [&](double chi) {
    const double a = (1 - std::cos(chi)) / 3;
    const double h = std::sin(chi) / (2 * s3);
    const double sc = std::pow(std::sin(chi), 2 * beta - 1);
    if (sc == 0) return 0.0;
    return sc * nest.sin_power(2 * beta - 2, [&](double cphi) {
      const double b = (1 - a) / 2 - h * cphi;
      const double c = 1 - a - b;
      return radial(beta, x[0] * a + x[1] * b + x[2] * c, opts.radial_cutoff);
    });
  };
  bq::tanh_sinh<double> outer;
  double err = 0, l1 = 0;
  const double I = outer.integrate(inner, 0.0, pi, kQuadTol, &err, &l1);
  const double jac = std::pow(3.0, (3 - 2 * beta) / 2 - 1) / (2 * s3);
  const double C = std::pow(4.0, 1 - beta) / (std::sqrt(pi) * std::tgamma(beta - 0.5) * std::tgamma(beta));
  const double rhs = C * jac * I;
  return finish(lhs, rhs, "quadrature", nest.evals, err / std::abs(I) + nest.inner_err, tol);
}

IntegralCheck verify_E2n(std::size_t n, double beta, std::span<const double> x, double tol, const QuadOptions& opts) {
  if (n < 3 || n > 6) throw Error(ErrorCode::kInvalidArgument, "verify_E2n supports n = 3..6");
  if (x.size() != n) throw Error(ErrorCode::kInvalidArgument, "x has wrong dimension");
  const double nd = static_cast<double>(n);
  const double wall = (nd - 2) / 2;
  const bool boundary = beta == wall;
  if (!boundary && !(beta > wall + kBetaMargin))
    throw Error(ErrorCode::kDomain, "verify_E2n needs beta = (n-2)/2 or beta > (n-2)/2 + 1e-3");

  // y = a e + z with e = 1/sqrt(n), z orthogonal to e, |z| = rho a / sqrt(n-1);
  // then K(y) = a^2 (1 - rho^2) / 2 and x.y = a L with
  // L = x_e + rho |x_perp| cos psi / sqrt(n-1).
  double sum = 0;
  for (double v : x) sum += v;
  const double xe = sum / std::sqrt(nd);
  std::vector<double> xperp(n);
  double xp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xperp[i] = x[i] - sum / nd;
    xp += xperp[i] * xperp[i];
  }
  xp = std::sqrt(xp);
  const double sq = std::sqrt(nd - 1);
  if (!(xe - xp / sq > 0)) throw Error(ErrorCode::kDomain, "x is not in the dual cone");
  const double lhs = std::pow(e2(x), -beta);
  const double cutoff = opts.radial_cutoff / std::sqrt(nd);  // sum(y) = a sqrt(n)
  auto Lof = [&](double rho, double cospsi) { return xe + rho * xp * cospsi / sq; };

  // I / Gamma(beta - (n-2)/2), times the constant in front of the integral.
  const double pref = std::pow(2.0, nd / 2 - beta) * std::pow(nd - 1, -(nd - 1) / 2);
  const double C = std::pow(nd - 1, (nd - 1) / 2 - beta) / (std::pow(2 * pi, (nd - 2) / 2) * std::tgamma(beta));
  const double wall_gamma = boundary ? 1.0 : std::tgamma(beta - wall);

  if (n <= 4) {
    // omega on S^(n-2) reduces to psi in (0, pi) with weight |S^(n-3)| sin^(n-3) psi.
    Nested nest;
    const double sa = sphere_area(n - 3);
    auto psi_int = [&](double rho) {
      return nest.sin_power(nd - 3, [&](double c) { return radial(beta, Lof(rho, c), cutoff); });
    };
    double I = 0, err = 0;
    if (boundary) {
      // (1 - rho^2)^(eps - 1) / Gamma(eps) tends to delta(rho - 1) / 2.
      I = 0.5 * psi_int(1.0);
    } else {
      // rho = cos theta keeps 1 - rho^2 = sin^2 theta accurate near rho = 1.
      bq::tanh_sinh<double> outer;
      double l1 = 0;
      I = outer.integrate(
          [&](double th) {
            return std::pow(std::cos(th), nd - 2) * std::pow(std::sin(th), 2 * beta - nd + 1) * psi_int(std::cos(th));
          },
          0.0, pi / 2, kQuadTol, &err, &l1);
    }
    const double rhs = C * pref * sa * I / wall_gamma;
    return finish(lhs, rhs, boundary ? "quadrature_boundary" : "quadrature", nest.evals,
                  err / std::abs(I) + nest.inner_err, tol);
  }

  // Monte Carlo over the cone: rho^2 ~ Beta((n-1)/2, beta - n/2 + 1), omega
  // uniform on the unit sphere of the hyperplane sum(y) = 0; the radial
  // variable is integrated exactly.
  if (opts.mc_samples < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 Monte Carlo samples");
  RatMatrix km(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) km(i, j) = i == j ? Rat(-static_cast<long>(n - 2), 2) : Rat(1, 2);
  const LorentzFrame frame{QuadForm(km)};

  constexpr std::size_t kBatch = 4096;
  const std::size_t nb = (opts.mc_samples + kBatch - 1) / kBatch;
  struct Acc {
    double s = 0, s2 = 0;
    std::size_t count = 0, outside = 0;
  };
  std::vector<Acc> acc(nb);
  auto run_batch = [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::gamma_distribution<double> ga((nd - 1) / 2, 1.0), gb(boundary ? 1.0 : beta - nd / 2 + 1, 1.0);
    const std::size_t m = std::min(kBatch, opts.mc_samples - b * kBatch);
    std::vector<double> z(n), y(n);
    Acc a;
    for (std::size_t s = 0; s < m; ++s) {
      double mean = 0;
      for (auto& v : z) mean += (v = normal(rng));
      mean /= nd;
      double nz = 0;
      for (auto& v : z) {
        v -= mean;
        nz += v * v;
      }
      nz = std::sqrt(nz);
      double cospsi = 0;
      if (xp > 0)
        for (std::size_t i = 0; i < n; ++i) cospsi += z[i] * xperp[i] / (nz * xp);
      double rho = 1.0;
      if (!boundary) {
        const double u = ga(rng), w = gb(rng);
        rho = std::sqrt(u / (u + w));
        for (std::size_t i = 0; i < n; ++i) y[i] = 1 / std::sqrt(nd) + rho / sq * z[i] / nz;
        if (frame.classify(std::span<const double>(y)) != ConeSide::kInsideC) {
          ++a.outside;
          ++a.count;
          continue;
        }
      }
      const double f = radial(beta, Lof(rho, cospsi), cutoff);
      a.s += f;
      a.s2 += f * f;
      ++a.count;
    }
    acc[b] = a;
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (std::size_t b = 0; b < nb; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < nb; b += threads) run_batch(b);
      });
    for (auto& th : pool) th.join();
  }
  // Pairwise reduction in fixed batch order.
  for (std::size_t width = 1; width < nb; width *= 2)
    for (std::size_t i = 0; i + width < nb; i += 2 * width) {
      acc[i].s += acc[i + width].s;
      acc[i].s2 += acc[i + width].s2;
      acc[i].count += acc[i + width].count;
      acc[i].outside += acc[i + width].outside;
    }
  const Acc& tot = acc[0];
  const double N = static_cast<double>(tot.count);
  const double mean = tot.s / N;
  const double var = std::max(0.0, (tot.s2 / N - mean * mean) * N / (N - 1));
  const double rho_mass = boundary ? 0.5 : std::beta((nd - 1) / 2, beta - nd / 2 + 1) / 2;
  const double scale = C * pref * sphere_area(n - 2) * rho_mass / wall_gamma;
  const double rhs = scale * mean;
  const double se = scale * std::sqrt(var / N);
  IntegralCheck c = finish(lhs, rhs, "monte_carlo", tot.count, se / std::abs(rhs), tol);
  c.passed = std::abs(lhs - rhs) <= 3 * se + 1e-12 * std::abs(lhs);
  return c;
}

IntegralCheck verify_series_kernel(double beta, double lambda, double u, double v, double tol) {
  if (!(beta >= 0.5)) throw Error(ErrorCode::kDomain, "verify_series_kernel needs beta >= 1/2");
  if (!(lambda > 0 && u > 0 && v > 0)) throw Error(ErrorCode::kDomain, "lambda, u and v must be positive");
  const double lhs = std::pow(u + v, -beta) * std::exp(-lambda * u * v / (u + v));
  const double sl = std::sqrt(lambda);

  if (beta == 0.5) {
    // Centre the Gaussian: s = s0 + w / sqrt(u + v).
    const double s0 = sl * (v - u) / (2 * (u + v));
    const double k = 1 / std::sqrt(u + v);
    std::size_t evals = 0;
    auto f = [&](double w) {
      ++evals;
      const double s = s0 + k * w;
      return std::exp(-(s + sl / 2) * (s + sl / 2) * u - (s - sl / 2) * (s - sl / 2) * v);
    };
    double err = 0, l1 = 0;
    const double I = bq::gauss_kronrod<double, 61>::integrate(f, -40.0, 40.0, 15, kQuadTol, &err, &l1);
    const double rhs = k * I / std::sqrt(pi);
    return finish(lhs, rhs, "quadrature", evals, err / std::abs(I), tol);
  }

  // t1 = s^2, t2 = t1 + lambda - h cos phi with h = 2 s sqrt(lambda), where
  // P(t1, t2, lambda) = h^2 sin^2 phi.
  Nested nest;
  auto inner = [&](double s) {
    if (s == 0) return 0.0;
    const double h = 2 * s * sl;
    // The angular factor is at most 1, so an underflowing weight ends the tail.
    const double w = 2 * std::exp((2 * beta - 2) * std::log(h) + std::log(s) - s * s * u);
    if (!(w > 0)) return 0.0;
    return w * nest.sin_power(2 * beta - 2, [&](double c) { return std::exp(-(s * s + lambda - h * c) * v); });
  };
  bq::exp_sinh<double> outer;
  double err = 0, l1 = 0;
  const double I = outer.integrate(inner, 0.0, std::numeric_limits<double>::infinity(), kQuadTol, &err, &l1);
  const double C = std::pow(4 * lambda, 1 - beta) / (std::sqrt(pi) * std::tgamma(beta - 0.5));
  const double rhs = C * I;
  return finish(lhs, rhs, "quadrature", nest.evals, err / std::abs(I) + nest.inner_err, tol);
}

double gamma_omega(double alpha, std::size_t r, std::size_t d, std::size_t n) {
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "rank must be positive");
  if (n != r + d * r * (r - 1) / 2) throw Error(ErrorCode::kInvalidArgument, "need n = r + d r (r-1) / 2");
  double v = std::pow(2 * pi, (static_cast<double>(n) - static_cast<double>(r)) / 2);
  for (std::size_t j = 0; j < r; ++j) {
    const double a = alpha - static_cast<double>(j * d) / 2;
    if (a <= 0 && a == std::floor(a)) throw Error(ErrorCode::kDomain, "Gamma pole at " + std::to_string(a));
    v *= std::tgamma(a);
  }
  return v;
}

IntegralCheck verify_det_integral_m2(double beta, const RatMatrix& a, double tol, const QuadOptions& opts) {
  if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorCode::kInvalidArgument, "verify_det_integral_m2 needs 2x2 A");
  if (!is_symmetric(a)) throw Error(ErrorCode::kInvalidArgument, "A must be symmetric");
  if (!(beta > 0.5 + kBetaMargin)) throw Error(ErrorCode::kDomain, "verify_det_integral_m2 needs beta > 1/2 + 1e-3");
  const Rat det = det_exact(a);
  if (a(0, 0).sign() <= 0 || det.sign() <= 0) throw Error(ErrorCode::kDomain, "A must be positive definite");
  const double a11 = a(0, 0).to_double(), a22 = a(1, 1).to_double(), a12 = a(0, 1).to_double();
  const double lhs = std::pow(det.to_double(), -beta);

  // B = r [[w, sqrt(w(1-w)) cos phi], [., 1 - w]] with w = (1 - cos chi)/2;
  // tr(AB) = r T and the radial integral is exact.
  Nested nest;
  auto inner = [&](double chi) {
    const double w = (1 - std::cos(chi)) / 2;
    const double sw = std::sin(chi) / 2;  // sqrt(w (1 - w))
    const double sc = std::pow(std::sin(chi), 2 * beta - 1);
    if (sc == 0) return 0.0;
    return sc * nest.sin_power(2 * beta - 2, [&](double c) {
      return radial(beta, a11 * w + a22 * (1 - w) + 2 * a12 * sw * c, opts.radial_cutoff);
    });
  };
  bq::tanh_sinh<double> outer;
  double err = 0, l1 = 0;
  const double I = outer.integrate(inner, 0.0, pi, kQuadTol, &err, &l1);
  const double jac = std::pow(4.0, 1 - beta) / 2;
  const double C = 1 / (std::sqrt(pi) * std::tgamma(beta) * std::tgamma(beta - 0.5));
  const double rhs = C * jac * I;
  return finish(lhs, rhs, "quadrature", nest.evals, err / std::abs(I) + nest.inner_err, tol);
}

std::string integral_check_to_json(const IntegralCheck& c, std::string_view formula) {
  detail::json j;
  j["formula"] = formula;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["rel_err"] = c.rel_err;
  j["method"] = c.method;
  j["samples_or_cells"] = c.samples_or_cells;
  j["error_estimate"] = c.error_estimate;
  j["tol"] = c.tol;
  j["passed"] = c.passed;
  return j.dump();
}

std::string integral_check_csv_header() {
  return "formula,lhs,rhs,rel_err,method,samples_or_cells,error_estimate,passed";
}

std::string integral_check_to_csv(const IntegralCheck& c, std::string_view formula) {
  std::ostringstream os;
  os.precision(17);
  os << formula << ',' << c.lhs << ',' << c.rhs << ',' << c.rel_err << ',' << c.method << ',' << c.samples_or_cells
     << ',' << c.error_estimate << ',' << (c.passed ? "true" : "false");
  return os.str();
}

}  // namespace cmpoly
