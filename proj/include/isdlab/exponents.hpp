#ifndef ISDLAB_EXPONENTS_HPP
#define ISDLAB_EXPONENTS_HPP

#include <isdlab/bits.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace isdlab {

class Infeasible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Binary entropy. Arguments within 1e-14 outside [0, 1] are clamped; others
/// throw ParameterError.
double h2(double x);
/// x in [0, 1/2] with h2(x) = y, by bisection to machine precision.
double h2_inv(double y);
/// h2_inv(1 - R).
double gv_relative_weight(double R);

/// H(w) - (1-R) H(w/(1-R)); +inf when w > 1 - R.
double alpha_prange(double R, double omega);
/// alpha_prange / 2.
double alpha_bernstein(double R, double omega);

/// Smallest lambda in [0, 1-R] with lambda = (2/5)(R+lambda) H(pi/(R+lambda)).
/// Throws Infeasible when there is none.
double solve_lambda_ssqw(double R, double pi);

struct ExponentPoint {
  double R = 0;
  double omega = 0;
  double lambda = 0;
  double pi = 0;
  double dpi = 0;
  double alpha = 0;
};

/// Which denominator the last term of beta uses:
///   support:     (R+lambda-pi) H(dpi/(R+lambda-pi))
///   complement:  (1-R-lambda)  H(dpi/(1-R-lambda))
enum class BetaVariant { support, complement };

/// Objective values at a given parameter point (+inf when infeasible).
double ssqw_objective(double R, double omega, double pi, double lambda);
double mmtqw_objective(double R, double omega, double lambda, double dpi,
                       BetaVariant variant = BetaVariant::support);
/// pi = 2((R+lambda) h2_inv(5 lambda / (4(R+lambda))) - dpi); NaN when 5 lambda > 4(R+lambda).
double mmtqw_pi(double R, double lambda, double dpi);

/// Minimum over pi in [0, omega] with lambda eliminated. Throws Infeasible
/// when no point is feasible.
ExponentPoint alpha_ssqw(double R, double omega, double tol = 1e-7);
/// Minimum over (lambda, dpi) with pi eliminated, nested multi-start
/// golden-section (8 x 8 cells). Throws Infeasible when no point is feasible.
ExponentPoint alpha_mmtqw(double R, double omega, double tol = 1e-7, BetaVariant variant = BetaVariant::support);

enum class Algorithm { prange, bernstein, ssqw, mmtqw };
std::string_view algorithm_name(Algorithm a);
/// Throws ParameterError for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// One algorithm at (R, omega). For prange/bernstein only alpha is set.
ExponentPoint evaluate_exponent(Algorithm a, double R, double omega, double tol = 1e-7,
                                BetaVariant variant = BetaVariant::support);

/// max over R in (0, 1) of the exponent at omega = gv_relative_weight(R):
/// grid scan followed by golden-section refinement to tol in R.
ExponentPoint max_over_rate(Algorithm a, double tol = 1e-7, BetaVariant variant = BetaVariant::support);

struct SweepRow {
  double R = 0;
  double omega = 0;
  std::optional<double> alpha_prange, alpha_bernstein, alpha_ssqw, alpha_mmtqw;
  std::optional<double> lambda_ss, pi_ss, lambda_mmt, pi_mmt, dpi_mmt;
};

/// Evaluates the chosen algorithms on every R (omega = gv(R) unless fixed).
/// Infeasible cells stay empty. Rows keep the order of R_grid for any thread count.
std::vector<SweepRow> sweep_curve(const std::set<Algorithm>& algs, const std::vector<double>& R_grid,
                                  std::optional<double> fixed_omega = std::nullopt, double tol = 1e-7,
                                  std::size_t threads = 1, BetaVariant variant = BetaVariant::support);

/// Worker count: hardware concurrency capped by ISDLAB_THREADS when set.
std::size_t thread_budget();

}  // namespace isdlab

#endif
