// Acceptance checks. Usage: acceptance [N]; runs criterion N or all of them.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <isdlab/cli.hpp>
#include <isdlab/combinatorics.hpp>
#include <isdlab/exponents.hpp>
#include <isdlab/isd.hpp>
#include <isdlab/johnson.hpp>
#include <isdlab/ksum.hpp>
#include <isdlab/walk.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace isdlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome exponent_regression() {
  struct Target {
    Algorithm alg;
    double value, tol;
  };
  const Target targets[] = {{Algorithm::prange, 0.1207, 5e-5},
                            {Algorithm::bernstein, 0.06035, 1e-5},
                            {Algorithm::ssqw, 0.05970, 1e-5},
                            {Algorithm::mmtqw, 0.05869, 1e-5}};
  bool ok = true;
  std::string detail;
  for (const auto& t : targets) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = max_over_rate(t.alg, 1e-7);
    const double secs = seconds_since(t0);
    const bool hit = std::abs(p.alpha - t.value) <= t.tol && secs < 60;
    ok = ok && hit;
    detail += std::string(algorithm_name(t.alg)) + "=" + fmt("%.8f", p.alpha) + " at R=" + fmt("%.5f", p.R) + " (" +
              fmt("%.2f", secs) + "s) ";
  }
  return {ok, detail};
}

Outcome consistency_identity() {
  const double a = max_over_rate(Algorithm::mmtqw, 1e-7).alpha;
  const double diff = a - 0.1164 / 2;
  return {diff > 3e-4 && diff < 7e-4, "alpha_mmtqw - 0.0582 = " + fmt("%.3e", diff)};
}

Outcome dominance() {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  const auto rows = sweep_curve({Algorithm::bernstein, Algorithm::ssqw, Algorithm::mmtqw}, grid, std::nullopt, 1e-7,
                                thread_budget());
  bool ok = true;
  double best = 0, best_R = 0;
  for (const auto& r : rows) {
    if (!r.alpha_ssqw || !r.alpha_mmtqw || !r.alpha_bernstein) {
      ok = false;
      continue;
    }
    ok = ok && *r.alpha_ssqw <= *r.alpha_bernstein + 1e-9 && *r.alpha_mmtqw <= *r.alpha_bernstein + 1e-9;
    if (r.R >= 0.3 - 1e-12 && r.R <= 0.7 + 1e-12) {
      const double gain = *r.alpha_bernstein - std::min(*r.alpha_ssqw, *r.alpha_mmtqw);
      if (gain > best) best = gain, best_R = r.R;
    }
  }
  ok = ok && best > 1e-4;
  return {ok, "largest improvement on [0.3, 0.7] is " + fmt("%.3e", best) + " at R=" + fmt("%.2f", best_R)};
}

Outcome spectral_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const double j103 = exact_spectral_gap({10, 3, 1}).absolute;
  const double j52 = exact_spectral_gap({5, 2, 2}).absolute;
  const double single52 = exact_spectral_gap({5, 2, 1}).absolute;
  const double bound = product_gap_bound(6, single52, 6, single52);
  bool ok = std::abs(j103 - 10.0 / 21.0) <= 1e-9 && std::abs(j52 - 5.0 / 12.0) <= 1e-9 && j52 >= bound - 1e-12 &&
            std::abs(bound - 1.0 / 3.0) <= 1e-12;
  // m = 1 is the identity; every m >= 2 spec with C(n,r)^m <= 4096
  std::size_t specs = 0, failures = 0;
  for (std::size_t m = 2; m <= 12; ++m)
    for (std::size_t n = 2;; ++n) {
      if (std::pow(static_cast<double>(n), static_cast<double>(m)) > 4096) break;
      for (std::size_t r = 1; r < n; ++r) {
        const JohnsonSpec s{n, r, m};
        if (s.vertex_count() > 4096) continue;
        ++specs;
        const double power = exact_spectral_gap(s).absolute;
        const double single = exact_spectral_gap({n, r, 1}).absolute;
        if (power < single / static_cast<double>(m) - 1e-9) ++failures;
      }
    }
  const double secs = seconds_since(t0);
  ok = ok && failures == 0 && secs < 30;
  return {ok, "J(10,3)=" + fmt("%.12f", j103) + " J^2(5,2)=" + fmt("%.12f", j52) + " bound=" + fmt("%.6f", bound) +
                  "; " + std::to_string(specs) + " power specs, " + std::to_string(failures) + " violations (" +
                  fmt("%.2f", secs) + "s)"};
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M.set(i, j, rng.coin());
  return M;
}

Outcome ksum_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0, tuples = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(Rng::derive(seed, 77));
    KSumInstance inst;
    if (seed % 2 == 0) {
      // disjoint quarter supports, G2 trivial
      const std::size_t size = 8 + rng.below(21);
      inst = make_planted_ksum(8, 2, size, GroupSplit(10, 4, 0), seed).inst;
      const auto oracle = brute_force_four_sum(inst);
      tuples += oracle.size();
      if (ss_four_sum(inst) != oracle) ++mismatches;
      if (rep_four_sum_all(inst) != oracle) ++mismatches;
    } else {
      // overlapping half supports (dp = 0 lists), G2 nontrivial
      const std::size_t m = 12;
      inst.Hp = random_matrix(10, m, rng);
      inst.split = GroupSplit(10, 2, 2);
      auto left = weight_vectors(m, 0, m / 2, 2), right = weight_vectors(m, m / 2, m / 2, 2);
      const std::size_t size = 8 + rng.below(8);
      std::vector<BitVector> l, r;
      for (auto i : rng.partial_shuffle(left.size(), size)) l.push_back(left[i]);
      for (auto i : rng.partial_shuffle(right.size(), size)) r.push_back(right[i]);
      inst.lists = {l, r, l, r};
      inst.target = inst.image(l[rng.below(size)] ^ r[rng.below(size)] ^ l[rng.below(size)] ^ r[rng.below(size)]);
      const auto oracle = brute_force_four_sum(inst);
      tuples += oracle.size();
      if (rep_four_sum_all(inst) != oracle) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60, std::to_string(mismatches) + " mismatches over 200 instances, " +
                                            std::to_string(tuples) + " oracle tuples (" + fmt("%.2f", secs) + "s)"};
}

Outcome desk_decoding() {
  const IsdParams engines[] = {
      {Engine::prange, 0, 0, 0}, {Engine::dumer, 2, 2, 0}, {Engine::ss, 4, 4, 0}, {Engine::mmt, 4, 4, 0}};
  bool ok = true;
  std::string detail;
  for (std::size_t w : {4, 6})
    for (const auto& e : engines) {
      const IsdParams params = normalize_params(48, 24, w, e);
      const double P = engine_success_probability(48, 24, w, params);
      const auto iters = static_cast<std::size_t>(std::ceil(50 / P));
      // the instance may have other weight-w solutions; any verified one counts
      std::size_t recovered = 0, planted = 0, invalid = 0;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = random_instance(48, 24, w, Rng::derive(seed, w));
        const auto rep = isd_decode(inst, params, Rng::derive(seed, 1000 + w), iters);
        if (rep.status != DecodeStatus::found) continue;
        if (!inst.accepts(*rep.error)) {
          ++invalid;
          continue;
        }
        ++recovered;
        if (*rep.error == *inst.planted) ++planted;
      }
      ok = ok && recovered >= 95 && invalid == 0;
      detail += std::string(engine_name(e.engine)) + "/w" + std::to_string(w) + "=" + std::to_string(recovered) + " (" +
                std::to_string(planted) + " planted) ";
    }
  return {ok, "verified solutions per 100 seeds: " + detail};
}

Outcome probability_validation() {
  struct Case {
    std::size_t n, k, ell, w, p;
    Variant v;
  };
  const Case cases[] = {{10, 4, 2, 3, 1, Variant::dumer},  {10, 4, 2, 3, 1, Variant::mmtqw},
                        {24, 12, 0, 3, 0, Variant::dumer}, {32, 16, 2, 4, 2, Variant::dumer},
                        {40, 18, 2, 6, 4, Variant::ssqw},  {40, 18, 2, 6, 4, Variant::mmtqw},
                        {48, 24, 4, 6, 4, Variant::ssqw},  {48, 24, 4, 6, 2, Variant::dumer},
                        {64, 28, 4, 8, 4, Variant::mmtqw}, {60, 30, 2, 5, 0, Variant::dumer}};
  const std::size_t trials = 200000;
  bool ok = std::abs(success_probability(10, 4, 2, 3, 1, Variant::dumer) - 0.3) <= 1e-12;
  double worst = 0;
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    const auto& c = cases[i];
    const double p = success_probability(c.n, c.k, c.ell, c.w, c.p, c.v);
    const double est = estimate_success_monte_carlo(c.n, c.k, c.ell, c.w, c.p, c.v, trials, 1000 + i);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    const double z = sigma > 0 ? std::abs(est - p) / sigma : (est == p ? 0 : 1e9);
    worst = std::max(worst, z);
    ok = ok && z <= 3;
  }
  return {ok, "10 parameter sets, worst deviation " + fmt("%.2f", worst) + " sigma; P(10,4,2,3,1) = " +
                  fmt("%.12g", success_probability(10, 4, 2, 3, 1, Variant::dumer))};
}

Outcome walk_emulation() {
  const std::size_t V = 20, U = 8;
  const double eps = std::pow(static_cast<double>(U) / static_cast<double>(V), 4);
  const double delta = johnson_gap_formula({V, U, 1}) / 4;
  const double limit = 8 / eps / delta;
  std::vector<double> updates;
  std::size_t violations = 0, reinit = 0, misses = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pk = make_planted_ksum(6, 3, V, GroupSplit(20, 3, 0), seed);
    SsWalkOptions opt;
    opt.budget = 1u << 20;
    const auto rec = emulate_ss_walk(pk.inst, U, merge_target_of(pk.inst, pk.planted), Rng::derive(seed, 1), opt);
    violations += rec.stats.limit_violations;
    reinit += rec.stats.reinitializations;
    if (!rec.walk.found || !pk.inst.accepts(*rec.solution)) ++misses;
    updates.push_back(static_cast<double>(rec.walk.update_count));
  }
  std::sort(updates.begin(), updates.end());
  const double median = (updates[49] + updates[50]) / 2;
  return {median <= limit && violations == 0 && misses == 0,
          "median updates " + fmt("%.1f", median) + " vs limit " + fmt("%.1f", limit) + "; " +
              std::to_string(violations) + " limit violations, " + std::to_string(reinit) + " re-initializations, " +
              std::to_string(misses) + " misses"};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> invocations = {
      {"decode", "--n", "32", "--k", "16", "--w", "4", "--engine", "mmt", "--ell", "4", "--p", "4", "--seed", "9"},
      {"decode", "--n", "24", "--k", "12", "--w", "3", "--seed", "2", "--format", "text"},
      {"exponent", "--alg", "ssqw", "--R", "0.4", "--format", "json"},
      {"exponent", "--alg", "mmtqw", "--R", "0.5", "--audit"},
      {"curve", "--R-start", "0.1", "--R-stop", "0.9", "--R-step", "0.1"},
      {"spectral", "--n", "6", "--r", "2", "--m", "2", "--format", "json"},
      {"walk", "--n", "8", "--r", "3", "--marked-fraction", "0.02", "--seed", "4", "--trace", "-"},
      {"walk", "--planted", "--seed", "11"}};
  std::size_t differ = 0;
  for (const auto& args : invocations) {
    std::ostringstream o1, e1, o2, e2;
    const int c1 = run_cli(args, o1, e1), c2 = run_cli(args, o2, e2);
    if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str() || o1.str().empty()) ++differ;
  }
  return {differ == 0, std::to_string(invocations.size()) + " invocations, " + std::to_string(differ) +
                           " with differing output"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      exponent_regression, consistency_identity, dominance,       spectral_suite, ksum_equivalence,
      desk_decoding,       probability_validation, walk_emulation, determinism};
  std::vector<std::size_t> selected;
  if (argc > 1) {
    const long c = std::strtol(argv[1], nullptr, 10);
    if (c < 1 || c > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
      return 64;
    }
    selected.push_back(static_cast<std::size_t>(c));
  } else {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(i);
  }
  bool all = true;
  for (std::size_t c : selected) {
    Outcome o;
    try {
      o = criteria[c - 1]();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", c, o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
