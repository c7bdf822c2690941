#include <isdlab/exponents.hpp>
#include <isdlab/bits.hpp>
#include <isdlab/optimize.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace isdlab {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double slack = 1e-14;
}  // namespace

double h2(double x) {
  if (!(x >= -slack && x <= 1 + slack)) throw ParameterError("h2: argument outside [0, 1]");
  if (x <= 0 || x >= 1) return 0.0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double h2_inv(double y) {
  if (!(y >= -slack && y <= 1 + slack)) throw ParameterError("h2_inv: argument outside [0, 1]");
  if (y <= 0) return 0.0;
  if (y >= 1) return 0.5;
  double lo = 0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h2(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gv_relative_weight(double R) {
  if (!(R >= 0 && R <= 1)) throw ParameterError("gv_relative_weight: R outside [0, 1]");
  return h2_inv(1 - R);
}

double alpha_prange(double R, double omega) {
  if (!(R >= 0 && R <= 1)) throw ParameterError("alpha_prange: R outside [0, 1]");
  if (!(omega >= 0 && omega <= 1)) throw ParameterError("alpha_prange: omega outside [0, 1]");
  const double c = 1 - R;
  if (omega > c) return inf;
  if (c <= 0) return 0.0;
  return h2(omega) - c * h2(omega / c);
}

double alpha_bernstein(double R, double omega) { return alpha_prange(R, omega) / 2; }

double solve_lambda_ssqw(double R, double pi) {
  if (!(pi >= 0)) throw ParameterError("solve_lambda_ssqw: pi must be nonnegative");
  if (pi == 0) return 0.0;
  const double hi = 1 - R;
  const double lo = std::max(0.0, pi - R);
  if (lo > hi) throw Infeasible("solve_lambda_ssqw: pi > R + lambda on the whole range");
  auto g = [&](double l) { return l - 0.4 * (R + l) * h2(std::min(1.0, pi / (R + l))); };
  // g is convex; scan for the first sign change, then bisect
  constexpr int grid = 64;
  double a = lo, ga = g(lo);
  if (ga == 0) return lo;
  for (int i = 1; i <= grid; ++i) {
    double b = lo + (hi - lo) * i / grid;
    const double gb = g(b);
    if (gb == 0) return b;
    if ((ga < 0) != (gb < 0)) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double gm = g(mid);
        if ((gm < 0) == (ga < 0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    a = b;
    ga = gb;
  }
  throw Infeasible("solve_lambda_ssqw: no root in [0, 1 - R]");
}

double ssqw_objective(double R, double omega, double pi, double lambda) {
  const double RL = R + lambda, rest = 1 - R - lambda;
  if (pi < 0 || pi > omega || pi > RL || rest <= 0 || lambda > 1 - R - omega + pi) return inf;
  return (h2(omega) - rest * h2((omega - pi) / rest) - 0.4 * RL * h2(pi / RL)) / 2;
}

double mmtqw_pi(double R, double lambda, double dpi) {
  const double RL = R + lambda;
  const double a = 5 * lambda / (4 * RL);
  if (!(a >= 0 && a <= 1)) return std::numeric_limits<double>::quiet_NaN();
  return 2 * (RL * h2_inv(a) - dpi);
}

namespace {

double mmtqw_value(double R, double omega, double lambda, double dpi, double pi, BetaVariant variant) {
  const double RL = R + lambda, rest = 1 - R - lambda;
  if (!(pi >= -slack) || pi > omega + slack || pi > RL + slack || dpi < 0 || dpi > RL - pi + slack ||
      rest <= 0 || lambda > 1 - R - omega + pi + slack)
    return inf;
  pi = std::clamp(pi, 0.0, std::min(omega, RL));
  double last = 0;
  if (variant == BetaVariant::support) {
    const double room = RL - pi;
    if (room > 0) last = room * h2(std::min(1.0, dpi / room));
  } else {
    last = rest * h2(std::min(1.0, dpi / rest));
  }
  const double beta = 1.2 * RL * h2(std::min(1.0, (pi / 2 + dpi) / RL)) - pi - last;
  const double gamma = h2(omega) - rest * h2(std::min(1.0, (omega - pi) / rest)) - RL * h2(pi / RL);
  return (beta + gamma) / 2;
}

}  // namespace

double mmtqw_objective(double R, double omega, double lambda, double dpi, BetaVariant variant) {
  const double pi = mmtqw_pi(R, lambda, dpi);
  if (std::isnan(pi)) return inf;
  return mmtqw_value(R, omega, lambda, dpi, pi, variant);
}

namespace {

void check_rate(double R, double omega) {
  if (!(R > 0 && R < 1)) throw ParameterError("exponent: R must lie in (0, 1)");
  if (!(omega > 0 && omega <= 0.5)) throw ParameterError("exponent: omega must lie in (0, 1/2]");
}

}  // namespace

ExponentPoint alpha_ssqw(double R, double omega, double tol) {
  check_rate(R, omega);
  auto f = [&](double pi) {
    double l;
    try {
      l = solve_lambda_ssqw(R, pi);
    } catch (const Infeasible&) {
      return inf;
    }
    return ssqw_objective(R, omega, pi, l);
  };
  Min1D best = golden_section_multistart(f, 0, omega, tol, 8);
  const double at_zero = f(0);
  if (at_zero <= best.fx) best = {0, at_zero};
  if (!std::isfinite(best.fx)) throw Infeasible("alpha_ssqw: empty feasible set");
  return {R, omega, solve_lambda_ssqw(R, best.x), best.x, 0, best.fx};
}

ExponentPoint alpha_mmtqw(double R, double omega, double tol, BetaVariant variant) {
  check_rate(R, omega);
  const double lmax = std::min(4 * R, 1 - R);
  // t = (R+lambda) h2_inv(5 lambda / (4(R+lambda))) depends on lambda only
  double cached_l = -1, cached_t = 0;
  auto t_of = [&](double l) {
    if (l != cached_l) {
      cached_l = l;
      cached_t = (R + l) * h2_inv(std::min(1.0, 5 * l / (4 * (R + l))));
    }
    return cached_t;
  };
  auto range = [&](double l) {
    const double t = t_of(l), RL = R + l;
    const double lo = std::max({0.0, t - omega / 2, t - RL / 2, 2 * t - RL});
    const double hi = std::min(t, t - (l + R + omega - 1) / 2);
    return std::pair{lo, hi};
  };
  auto f = [&](double l, double dpi) { return mmtqw_value(R, omega, l, dpi, 2 * (t_of(l) - dpi), variant); };
  Min2D best = nested_golden_min(f, 0, lmax, range, tol, 8);
  const double at_zero = f(0, 0);
  if (at_zero <= best.fxy) best = {0, 0, at_zero};
  if (!std::isfinite(best.fxy)) throw Infeasible("alpha_mmtqw: empty feasible set");
  const double pi = std::max(0.0, 2 * (t_of(best.x) - best.y));
  return {R, omega, best.x, pi, best.y, best.fxy};
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::prange: return "prange";
    case Algorithm::bernstein: return "bernstein";
    case Algorithm::ssqw: return "ssqw";
    case Algorithm::mmtqw: return "mmtqw";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::prange, Algorithm::bernstein, Algorithm::ssqw, Algorithm::mmtqw})
    if (algorithm_name(a) == name) return a;
  throw ParameterError("unknown algorithm: " + std::string(name));
}

ExponentPoint evaluate_exponent(Algorithm a, double R, double omega, double tol, BetaVariant variant) {
  switch (a) {
    case Algorithm::prange: return {R, omega, 0, 0, 0, alpha_prange(R, omega)};
    case Algorithm::bernstein: return {R, omega, 0, 0, 0, alpha_bernstein(R, omega)};
    case Algorithm::ssqw: return alpha_ssqw(R, omega, tol);
    case Algorithm::mmtqw: return alpha_mmtqw(R, omega, tol, variant);
  }
  throw ParameterError("evaluate_exponent: bad algorithm");
}

ExponentPoint max_over_rate(Algorithm a, double tol, BetaVariant variant) {
  auto neg = [&](double R) {
    try {
      return -evaluate_exponent(a, R, gv_relative_weight(R), tol, variant).alpha;
    } catch (const Infeasible&) {
      return inf;
    }
  };
  constexpr int grid = 48;
  const double lo = 0.02, hi = 0.98, h = (hi - lo) / grid;
  int best_i = 0;
  double best_v = inf;
  for (int i = 0; i <= grid; ++i) {
    const double v = neg(lo + h * i);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a0 = std::max(0.01, lo + h * (best_i - 1)), b0 = std::min(0.99, lo + h * (best_i + 1));
  const Min1D m = golden_section_min(neg, a0, b0, tol);
  const double R = m.fx <= best_v ? m.x : lo + h * best_i;
  return evaluate_exponent(a, R, gv_relative_weight(R), tol, variant);
}

std::size_t thread_budget() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ISDLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min(n, static_cast<std::size_t>(v));
  }
  return n;
}

std::vector<SweepRow> sweep_curve(const std::set<Algorithm>& algs, const std::vector<double>& R_grid,
                                  std::optional<double> fixed_omega, double tol, std::size_t threads,
                                  BetaVariant variant) {
  for (double R : R_grid)
    if (!(R > 0 && R < 1)) throw ParameterError("sweep_curve: grid must lie in (0, 1)");
  if (fixed_omega && !(*fixed_omega > 0 && *fixed_omega <= 0.5))
    throw ParameterError("sweep_curve: omega must lie in (0, 1/2]");
  std::vector<SweepRow> rows(R_grid.size());
  auto work = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.R = R_grid[i];
    row.omega = fixed_omega ? *fixed_omega : gv_relative_weight(row.R);
    auto finite = [](double v) { return std::isfinite(v) ? std::optional<double>(v) : std::nullopt; };
    if (algs.count(Algorithm::prange)) row.alpha_prange = finite(alpha_prange(row.R, row.omega));
    if (algs.count(Algorithm::bernstein)) row.alpha_bernstein = finite(alpha_bernstein(row.R, row.omega));
    if (algs.count(Algorithm::ssqw)) {
      try {
        const auto p = alpha_ssqw(row.R, row.omega, tol);
        row.alpha_ssqw = p.alpha;
        row.lambda_ss = p.lambda;
        row.pi_ss = p.pi;
      } catch (const Infeasible&) {
      }
    }
    if (algs.count(Algorithm::mmtqw)) {
      try {
        const auto p = alpha_mmtqw(row.R, row.omega, tol, variant);
        row.alpha_mmtqw = p.alpha;
        row.lambda_mmt = p.lambda;
        row.pi_mmt = p.pi;
        row.dpi_mmt = p.dpi;
      } catch (const Infeasible&) {
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, R_grid.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) work(i);
    });
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace isdlab
