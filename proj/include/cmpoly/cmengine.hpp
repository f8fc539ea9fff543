#pragma once

// Complete-monotonicity evidence engine: Taylor-coefficient scans of
// P(c - y)^(-beta) over shift grids, threshold bisection, the C-Rayleigh
// inequality, semigroup positive-definiteness sampling and a half-plane
// zero search.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmpoly/exactalg.hpp"
#include "cmpoly/polyseries.hpp"

namespace cmpoly {

/// Printed with every scan verdict.
inline constexpr std::string_view kScanCaveat =
    "nonnegativity is checked only up to the stated order and over the listed shifts; "
    "it is evidence, not a proof of complete monotonicity";

inline constexpr std::uint64_t kDefaultSeed = 1;

/// all-ones; the n unit perturbations (1,..,2,..,1); 4 random shifts with
/// entries p/q in [1/2, 3], q <= 8, drawn from `seed`.
std::vector<ShiftVector> default_grid(std::size_t n, std::uint64_t seed = kDefaultSeed);
/// default_grid plus corner shifts (s,..,s,1,..,1) with k = 1..n-1 leading
/// entries s, for s in {8, 64}.
std::vector<ShiftVector> extended_grid(std::size_t n, std::uint64_t seed = kDefaultSeed);
/// "default", "extended", "ones" or "file:PATH" (one shift per line, entries
/// p/q separated by spaces or commas, '#' comments).
std::vector<ShiftVector> grid_from_spec(std::string_view spec, std::size_t n, std::uint64_t seed = kDefaultSeed);
std::vector<ShiftVector> parse_grid_text(std::string_view text, std::size_t n);

enum class Verdict { kNonnegativeUpTo, kNegativeFound, kInconclusive };
std::string_view verdict_name(Verdict v);

struct ShiftSummary {
  ShiftVector c;
  unsigned order_reached = 0;
  Rat min_coefficient;  // over the rational part, degrees 0..order_reached
  Exponent min_exponent;
  bool negative = false;
};

struct CmReport {
  Verdict verdict = Verdict::kNonnegativeUpTo;
  Rat beta;
  unsigned N = 0;
  std::vector<ShiftVector> scanned_c;
  std::vector<ShiftSummary> per_shift;  // one per scanned shift
  // NegativeFound
  std::size_t witness_shift = 0;  // index into scanned_c
  Exponent exponent;
  Rat coefficient;
  unsigned order = 0;
  std::string note;
};

struct ScanOptions {
  bool early_exit = true;
  unsigned threads = 1;
  /// Monomials per degree layer above which the scan stops as Inconclusive.
  std::size_t max_layer_terms = 20'000'000;
};

/// Expands P(c - y)^(-beta) to total degree N for each c in grid order and
/// reports the first negative coefficient (grid, then degree, then lex
/// order). Throws kDomain if P(c) <= 0 or beta <= 0.
CmReport cm_scan(const MultiPoly& p, const Rat& beta, const std::vector<ShiftVector>& grid, unsigned N,
                 const ScanOptions& opts = {});

struct Probe {
  Rat beta;
  Verdict verdict;
  unsigned order = 0;  // witness order when negative
  std::size_t witness_shift = 0;
};

struct ThresholdEstimate {
  Rat beta_lo, beta_hi;
  unsigned N = 0;
  std::string grid_description;
  std::size_t grid_size = 0;
  Rat tol;
  std::vector<Probe> probes;
  std::vector<std::string> tags;
  std::string note;
};

/// Bisection on "cm_scan finds a negative coefficient". Both endpoints are
/// scanned first: a witness is required at lo and none at hi (kDomain
/// otherwise). Probes are exact rational midpoints.
ThresholdEstimate beta_bisect(const MultiPoly& p, const Rat& lo, const Rat& hi, unsigned N,
                              const std::vector<ShiftVector>& grid, const Rat& tol,
                              std::string grid_description = "custom", std::vector<std::string> tags = {},
                              const ScanOptions& opts = {});

struct RayleighViolation {
  std::size_t point = 0;
  std::size_t i = 0, j = 0;
  Rat margin;  // (beta+1) P_i P_j - P P_ij
};

struct RayleighReport {
  Rat beta;
  bool holds = true;
  Rat worst_margin;
  RayleighViolation worst;
  std::vector<RayleighViolation> violations;
  std::size_t points = 0;
};

/// Exact check of P * d_i d_j P <= (beta + 1) d_i P * d_j P for all i < j at
/// every point. P must be multiaffine and the points strictly positive.
RayleighReport c_rayleigh_check(const MultiPoly& p, const Rat& beta, const std::vector<std::vector<Rat>>& points);

struct PsdOptions {
  std::size_t restarts = 100;
  /// Wishart degrees of freedom; 0 means m.
  std::size_t dof = 0;
  /// Weight L of the shared rank-one component L v v^T.
  double anchor_weight = 1000.0;
  double ridge = 1e-3;
  /// Stop at the first restart below the decision line.
  bool stop_at_negative = false;
};

inline constexpr double kPsdDecisionLine = -1e-6;
inline constexpr double kPsdSlack = 1e-9;

struct PsdReport {
  std::size_t m = 0, k = 0;
  double beta = 0;
  std::uint64_t seed = 0;
  std::size_t restarts_run = 0;
  double min_eigenvalue = 0;  // of f(A_i + A_j) normalized by its largest entry
  std::size_t argmin_restart = 0;
  std::size_t restarts_below_line = 0;
  std::size_t first_below_line = 0;  // valid when restarts_below_line > 0
  PsdOptions options;
};

/// One restart's draw of k positive-definite m x m matrices with strictly
/// positive entries: A = G G^T / dof + L v v^T + ridge I, then A + s J with s
/// just large enough for positivity. v is a unit vector with nonnegative
/// entries shared by the k draws.
std::vector<std::vector<double>> draw_positive_matrices(std::size_t m, std::size_t k, std::uint64_t seed,
                                                        const PsdOptions& opts = {});
/// Symmetric k x k matrix det(A_i + A_j)^(-beta), row-major.
std::vector<double> semigroup_matrix(const std::vector<std::vector<double>>& mats, std::size_t m, double beta);
double min_eigenvalue(const std::vector<double>& sym, std::size_t k);

/// Minimum eigenvalue of det(A_i + A_j)^(-beta) (normalized by its largest
/// entry) over `restarts` seeded draws; restart r draws from seed_seq{seed, r}.
PsdReport semigroup_psd_test(std::size_t m, double beta, std::size_t k, std::uint64_t seed,
                             const PsdOptions& opts = {});

struct HppResult {
  std::optional<std::vector<std::complex<double>>> witness;
  double residual = 0;  // |P(witness)|
  std::size_t attempts = 0;
  std::uint64_t seed = 0;
};

/// Multistart minimum-norm Newton search for a zero of P with every Re z_i
/// > 1e-6. Accepts |P(z)| < 1e-10.
HppResult hpp_falsify(const MultiPoly& p, std::size_t attempts, std::uint64_t seed);

std::string report_to_json(const CmReport& r);
std::string report_to_json(const ThresholdEstimate& t);
std::string report_to_json(const RayleighReport& r);
std::string report_to_json(const PsdReport& r);
std::string report_to_json(const HppResult& r);

}  // namespace cmpoly
