#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "infdelay/history.hpp"
#include "infdelay/operators.hpp"

namespace infdelay {

/// Real roots (lower, upper) of lambda^2 + (1 + n^2) lambda + n^2 - 1/2 = 0.
/// Both are negative for every n >= 1.
std::pair<double, double> characteristic_roots(int n);

/// Roots of (lambda - a)(1 + lambda) = s for a diagonal generator eigenvalue a
/// and exponential-kernel scale s; reduces to the above for a = -n^2, s = 1/2.
std::pair<double, double> characteristic_roots(double eigenvalue, double scale);

/// (1 - n^2)^2 + 2.
double characteristic_discriminant(int n);

/// Period-1 multipliers (e^{lambda_-}, e^{lambda_+}).
std::pair<double, double> multiplier_oracle(int n);
std::pair<double, double> multiplier_oracle(double eigenvalue, double scale);

/// Discretized P(t0) = U(t0 + 1, t0) in the nodal (hat-function) basis of a
/// uniform theta grid, one block per sine mode.
struct MonodromyMatrix {
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<double> theta;
  GridSpec grid;
  double step = 1e-3;
  double start_time = 0.0;
  std::vector<double> eigenvalues;  ///< generator eigenvalue per block
  bool exponential_kernel = false;
  double kernel_scale = 0.0;

  std::size_t n_modes() const { return blocks.size(); }
};

/// Column j of block n is the segment at start_time + 1 of the homogeneous
/// solution started from the hat history at node j. Rows with theta <= -1
/// are an exact shift; the rest come from solve_quadrature. The grid spacing
/// must divide 1.
MonodromyMatrix build_monodromy(const Equation& eq, const GridSpec& grid, double step, double start_time = 0.0);

struct MultiplierMatch {
  std::size_t mode = 0;
  double root = 0.0;
  double multiplier = 0.0;
  std::complex<double> nearest;
  double rel_error = 0.0;
  bool within_tolerance = false;
};

struct SpectrumOptions {
  double band = 0.05;         ///< | |mu| - 1 | < band counts as on the unit circle
  double match_floor = 0.05;  ///< oracle multipliers below this modulus are not matched
  double match_tol = 1e-2;    ///< relative error accepted for a match
};

struct SpectrumReport {
  /// Per block, sorted by modulus descending, then by argument.
  std::vector<std::vector<std::complex<double>>> eigenvalues;
  double max_modulus = 0.0;
  double circle_distance = 0.0;  ///< min over all eigenvalues of | |mu| - 1 |
  bool sigma_gamma_empty = true;
  std::vector<std::pair<std::size_t, std::complex<double>>> on_circle;  ///< (mode, eigenvalue)
  std::vector<MultiplierMatch> matches;
  SpectrumOptions options;
  // metadata copied from the matrix
  GridSpec grid;
  double step = 0.0;
  double start_time = 0.0;

  bool all_matched() const;
};

/// Dense eigensolve per block, on diag(e^{gamma theta}) P diag(e^{-gamma theta}). Matches are formed only for exponential-kernel
/// equations, nearest neighbour in the complex plane, each oracle multiplier
/// and each eigenvalue used at most once.
SpectrumReport spectrum(const MonodromyMatrix& p, const SpectrumOptions& opts = {});

/// JSON document: eigenvalues as [re, im] pairs, verdicts, match table and
/// discretization metadata.
std::string spectrum_to_json(const SpectrumReport& report);

struct ProcessTriple {
  double r = 0.0, s = 0.0, t = 0.0;
};

struct ProcessAxiomReport {
  bool identity_exact = true;           ///< (i) U(t, t) = I bit-for-bit
  double cocycle_max_residual = 0.0;    ///< (ii) relative, in the gamma norm
  double continuity_max_jump = 0.0;     ///< (iii) max ||U(t+d, s)phi - U(t, s)phi|| / ||phi|| for d = 10 steps
  double bound_N = 1.0;                 ///< (iv) fitted constants of ||U(t,s)|| <= N e^{omega (t-s)}
  double bound_omega = 0.0;
  bool bound_holds = true;
  double periodicity_max_residual = 0.0;  ///< ||U(t+1, s+1)phi - U(t, s)phi||

  bool ok(double cocycle_tol) const {
    return identity_exact && cocycle_max_residual <= cocycle_tol && bound_holds && periodicity_max_residual == 0.0;
  }
};

/// Checks the evolutionary-process conditions on the discretization for each
/// history and (r <= s <= t) triple. Violations are reported, not thrown.
ProcessAxiomReport check_process_axioms(const Equation& eq, double step, const std::vector<History>& histories,
                                        const std::vector<ProcessTriple>& triples);

}  // namespace infdelay
