#include <doctest.h>

#include <isdlab/exponents.hpp>
#include <isdlab/format.hpp>
#include <isdlab/optimize.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace isdlab;

TEST_CASE("binary entropy and its inverse") {
  CHECK(h2(0.5) == doctest::Approx(1.0));
  CHECK(h2(0.0) == 0.0);
  CHECK(h2(1.0) == 0.0);
  CHECK(h2(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(h2(-1e-15) == 0.0);
  CHECK_THROWS_AS(h2(-1e-3), ParameterError);
  CHECK_THROWS_AS(h2(1.1), ParameterError);
  CHECK(h2_inv(1.0) == doctest::Approx(0.5));
  CHECK(h2_inv(0.0) == 0.0);
  CHECK(h2_inv(0.5) == doctest::Approx(0.11002786443835955).epsilon(1e-12));
  CHECK(gv_relative_weight(1.0) == 0.0);
  CHECK(gv_relative_weight(0.0) == doctest::Approx(0.5));
  CHECK(gv_relative_weight(0.5) == doctest::Approx(0.11002786443835955).epsilon(1e-12));
  for (int i = 0; i <= 1000; ++i) {
    const double y = i / 1000.0;
    CHECK(std::abs(h2(h2_inv(y)) - y) < 1e-10);
  }
}

TEST_CASE("prange and bernstein") {
  const double gv = gv_relative_weight(0.5);
  CHECK(std::abs(alpha_prange(0.5, gv) - 0.1199) <= 1e-4);
  CHECK(alpha_prange(1.0 - 1e-12, gv_relative_weight(1.0 - 1e-12)) == doctest::Approx(0.0));
  CHECK(std::isinf(alpha_prange(0.8, 0.3)));
  for (double R = 0.05; R < 1; R += 0.05) {
    const double w = gv_relative_weight(R);
    CHECK(alpha_bernstein(R, w) == alpha_prange(R, w) / 2);
  }
}

TEST_CASE("ssqw lambda solver") {
  CHECK(solve_lambda_ssqw(0.5, 0.0) == 0.0);
  const double lambda = solve_lambda_ssqw(0.5, 0.01);
  CHECK(lambda > 0);
  CHECK(std::abs(lambda - 0.4 * (0.5 + lambda) * h2(0.01 / (0.5 + lambda))) < 1e-10);
  CHECK_THROWS_AS(solve_lambda_ssqw(0.5, 1.2), Infeasible);
  CHECK_THROWS_AS(solve_lambda_ssqw(0.1, 0.95), Infeasible);
}

TEST_CASE("maxima over the rate") {
  const auto prange = max_over_rate(Algorithm::prange);
  CHECK(std::abs(prange.alpha - 0.1207) <= 5e-5);
  const auto bernstein = max_over_rate(Algorithm::bernstein);
  CHECK(std::abs(bernstein.alpha - 0.06035) <= 1e-5);
  CHECK(bernstein.alpha == doctest::Approx(prange.alpha / 2).epsilon(1e-9));
  const auto ss = max_over_rate(Algorithm::ssqw);
  CHECK(std::abs(ss.alpha - 0.05970) <= 1e-5);
  const auto mmt = max_over_rate(Algorithm::mmtqw);
  CHECK(std::abs(mmt.alpha - 0.05869) <= 1e-5);
  const double gap = mmt.alpha - 0.1164 / 2;
  CHECK(gap > 3e-4);
  CHECK(gap < 7e-4);
  const auto alt = max_over_rate(Algorithm::mmtqw, 1e-7, BetaVariant::complement);
  CHECK(alt.alpha <= mmt.alpha + 1e-9);
  CHECK(alt.alpha > 0.058);
}

TEST_CASE("optimizer outputs satisfy their constraints") {
  for (double R = 0.1; R < 0.95; R += 0.1) {
    const double w = gv_relative_weight(R);
    const auto ss = alpha_ssqw(R, w);
    CHECK(ss.alpha <= alpha_bernstein(R, w) + 1e-9);
    CHECK(ss.pi <= w + 1e-12);
    if (ss.lambda > 0)
      CHECK(std::abs(ss.lambda - 0.4 * (R + ss.lambda) * h2(ss.pi / (R + ss.lambda))) < 1e-9);
    CHECK(ssqw_objective(R, w, ss.pi, ss.lambda) == doctest::Approx(ss.alpha).epsilon(1e-12));

    const auto mmt = alpha_mmtqw(R, w);
    CHECK(mmt.alpha <= alpha_bernstein(R, w) + 1e-9);
    if (mmt.lambda > 0) {
      const double x = R + mmt.lambda;
      CHECK(std::abs(x * h2((mmt.pi / 2 + mmt.dpi) / x) - 1.25 * mmt.lambda) < 1e-9);
    }
    CHECK(mmtqw_objective(R, w, mmt.lambda, mmt.dpi) == doctest::Approx(mmt.alpha).epsilon(1e-12));
  }
}

TEST_CASE("strict improvement for rates 0.3 to 0.7") {
  for (double R : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    const double w = gv_relative_weight(R);
    CHECK(alpha_mmtqw(R, w).alpha < alpha_bernstein(R, w));
    CHECK(alpha_ssqw(R, w).alpha < alpha_bernstein(R, w));
  }
}

TEST_CASE("exponents are nondecreasing in omega") {
  for (double R : {0.2, 0.5, 0.8}) {
    const double gv = gv_relative_weight(R);
    double prev[4] = {0, 0, 0, 0};
    for (int i = 1; i <= 10; ++i) {
      const double w = gv * i / 10;
      const double now[4] = {alpha_prange(R, w), alpha_bernstein(R, w), alpha_ssqw(R, w).alpha,
                             alpha_mmtqw(R, w).alpha};
      for (int a = 0; a < 4; ++a) {
        INFO("R=" << R << " omega=" << w << " alg=" << a);
        CHECK(now[a] >= prev[a] - 1e-8);
        prev[a] = now[a];
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(alpha_ssqw(0.0, 0.1), ParameterError);
  CHECK_THROWS_AS(alpha_mmtqw(0.5, 0.6), ParameterError);
  CHECK(parse_algorithm("ssqw") == Algorithm::ssqw);
  CHECK(algorithm_name(Algorithm::mmtqw) == "mmtqw");
  CHECK_THROWS_AS(parse_algorithm("bjmm"), ParameterError);
  CHECK(std::isnan(mmtqw_pi(0.1, 0.9, 0.0)));
}

TEST_CASE("golden section") {
  auto r = golden_section_min([](double x) { return (x - 0.3) * (x - 0.3); }, 0, 1, 1e-9);
  CHECK(std::abs(r.x - 0.3) < 1e-8);
  r = golden_section_min([](double x) { return std::abs(x - 0.6); }, 0, 1, 1e-9);
  CHECK(std::abs(r.x - 0.6) < 1e-8);
  r = golden_section_min([](double) { return 2.5; }, 0, 1);
  CHECK(r.fx == 2.5);
  CHECK(r.x >= 0);
  CHECK(r.x <= 1);
  r = golden_section_min(
      [](double x) { return x < 0.5 ? std::numeric_limits<double>::infinity() : (x - 0.7) * (x - 0.7); }, 0, 1, 1e-9);
  CHECK(std::abs(r.x - 0.7) < 1e-6);
  const auto m = golden_section_multistart([](double x) { return std::cos(12 * x) + x; }, 0, 1, 1e-9, 8);
  CHECK(m.fx <= std::cos(12 * 0.2618) + 0.2618 + 1e-3);
  CHECK_THROWS_AS(golden_section_min([](double x) { return x; }, 1, 0), ParameterError);
  CHECK_THROWS_AS(golden_section_min([](double x) { return x; }, 0, 1, 0), ParameterError);
}

TEST_CASE("nested golden section") {
  auto r = nested_golden_min([](double x, double y) { return (x - 0.2) * (x - 0.2) + (y - 0.7) * (y - 0.7); },
                             Box{0, 1, 0, 1}, 1e-9);
  CHECK(std::abs(r.x - 0.2) < 1e-7);
  CHECK(std::abs(r.y - 0.7) < 1e-7);
  r = nested_golden_min([](double x, double y) { return 3 * (x - 0.9) * (x - 0.9) + 0.1 * (y + 1.5) * (y + 1.5); },
                        Box{0, 2, -3, 0}, 1e-9);
  CHECK(std::abs(r.x - 0.9) < 1e-6);
  CHECK(std::abs(r.y + 1.5) < 1e-6);
  r = nested_golden_min([](double, double) { return 4.0; }, Box{0, 1, 0, 1});
  CHECK(r.fxy == 4.0);
  r = nested_golden_min([](double x, double y) { return (x - 0.5) * (x - 0.5) + y; }, 0, 1,
                        [](double x) { return std::pair{x, 1.0}; }, 1e-9, 2);
  CHECK(std::abs(r.y - r.x) < 1e-6);
  CHECK(r.fxy == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("sweep rows are deterministic across thread counts") {
  const std::vector<double> grid{0.3, 0.4, 0.5, 0.6, 0.7};
  const std::set<Algorithm> all{Algorithm::prange, Algorithm::bernstein, Algorithm::ssqw, Algorithm::mmtqw};
  std::ostringstream a, b;
  write_curve_csv(a, sweep_curve(all, grid, std::nullopt, 1e-7, 1));
  write_curve_csv(b, sweep_curve(all, grid, std::nullopt, 1e-7, 4));
  CHECK(a.str() == b.str());
  const auto rows = sweep_curve(all, grid);
  for (const auto& row : rows) {
    CHECK(*row.alpha_ssqw <= *row.alpha_bernstein + 1e-9);
    CHECK(*row.alpha_mmtqw < *row.alpha_bernstein);
  }
  const auto fixed = sweep_curve({Algorithm::ssqw}, {0.5}, 0.05);
  CHECK(fixed[0].omega == 0.05);
  CHECK_FALSE(fixed[0].alpha_prange);
  CHECK(fixed[0].alpha_ssqw);
  CHECK_THROWS_AS(sweep_curve(all, {1.5}), ParameterError);
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(0.0586960123456) == "0.0586960123");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_cell(std::nullopt).empty());
  CHECK(round9(0.12345678912) == 0.123456789);
  SweepRow row;
  row.R = 0.5;
  row.omega = 0.25;
  row.alpha_prange = 0.1;
  CHECK(curve_csv_row(row) == "0.5,0.25,0.1,,,,,,,,");
  CHECK(std::string(curve_csv_header).starts_with("R,omega,"));
}
