#include <doctest.h>

#include <isdlab/combinatorics.hpp>
#include <isdlab/isd.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace isdlab;

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Instance whose planted error has the given support, with a complement of
// the first `width` positions that is full rank.
std::pair<DecodingInstance, PuncturedInstance> shaped(std::size_t n, std::size_t k, std::size_t width,
                                                      const std::vector<std::size_t>& support, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000) {
    auto base = random_instance(n, k, support.size(), s);
    auto inst = make_instance(base.H, support.size(), BitVector::from_indices(n, support));
    const auto pos = iota(width);
    if (auto p = gaussian_puncture(inst, pos)) return {inst, *p};
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;
}

}  // namespace

TEST_CASE("normalize_params") {
  SUBCASE("ell padding") {
    CHECK(normalize_params(20, 9, 3, {Engine::dumer, 0, 2, 0}).ell == 1);
    CHECK(normalize_params(20, 9, 4, {Engine::ss, 0, 4, 0}).ell == 3);
    CHECK(normalize_params(20, 9, 4, {Engine::ss, 3, 4, 0}).ell == 3);
    CHECK(normalize_params(20, 10, 4, {Engine::mmt, 2, 4, 2}).ell == 2);
    CHECK(normalize_params(20, 9, 4, {Engine::mmt, 0, 4, 0}).ell == 1);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(normalize_params(20, 10, 3, {Engine::ss, 2, 3, 0}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 10, 3, {Engine::dumer, 2, 3, 0}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 10, 4, {Engine::mmt, 2, 4, 1}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 10, 3, {Engine::prange, 1, 0, 0}), ParameterError);
    CHECK_THROWS_AS(normalize_params(10, 9, 0, {Engine::ss, 0, 0, 0}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 10, 2, {Engine::dumer, 2, 4, 0}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 0, 2, {}), ParameterError);
    CHECK_THROWS_AS(normalize_params(20, 10, 4, {Engine::dumer, 2, 2, 0, 4}), ParameterError);
  }
  CHECK(parse_engine("mmt") == Engine::mmt);
  CHECK(engine_name(Engine::dumer) == "dumer");
  CHECK_THROWS_AS(parse_engine("bjmm"), ParameterError);
}

TEST_CASE("w = 0 decodes to the zero vector") {
  auto base = random_instance(16, 8, 0, 3);
  const auto r = isd_decode(base, {}, 1, 10);
  CHECK(r.status == DecodeStatus::found);
  CHECK(r.error->is_zero());
  CHECK(r.outer_iterations == 1);
}

TEST_CASE("prange finds (24,12,3) within the expected number of searches") {
  const double inv_p = static_cast<double>(binomial(24, 3)) / static_cast<double>(binomial(12, 3));
  CHECK(inv_p == doctest::Approx(9.2));
  std::vector<double> searches;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance(24, 12, 3, seed);
    const auto r = isd_decode(inst, {}, seed + 7, 2000);
    REQUIRE(r.status == DecodeStatus::found);
    CHECK(inst.accepts(*r.error));
    CHECK(r.outer_iterations == r.search_invocations + r.counters.rank_deficient);
    searches.push_back(static_cast<double>(r.search_invocations));
  }
  const double med = median(searches);
  CHECK(med >= inv_p / 3);
  CHECK(med <= inv_p * 3);
}

TEST_CASE("dumer on (32,16,4) with ell = 2, p = 2") {
  const IsdParams params{Engine::dumer, 2, 2, 0};
  const double prob = engine_success_probability(32, 16, 4, params);
  CHECK(prob == doctest::Approx(81.0 * 91.0 / 35960.0));
  double total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance(32, 16, 4, seed);
    const auto r = isd_decode(inst, params, seed, 5000);
    REQUIRE(r.status == DecodeStatus::found);
    CHECK(inst.accepts(*r.error));
    total += static_cast<double>(r.search_invocations);
  }
  CHECK(total / 100 >= 0.5 / prob);
  CHECK(total / 100 <= 2.0 / prob);
}

TEST_CASE("prange search succeeds exactly when the lifted zero vector has weight w") {
  const auto inst = random_instance(12, 6, 2, 11);
  std::size_t found = 0, zero_on_s = 0;
  for (const auto& s : all_subsets(12, 6)) {
    const auto p = gaussian_puncture(inst, s);
    if (!p) continue;
    SearchCounters c;
    const auto e = search_prange(*p, 2, c);
    const bool planted_outside = restrict_to(*inst.planted, s).is_zero();
    zero_on_s += planted_outside;
    if (planted_outside) {
      REQUIRE(e);
      CHECK(*e == *inst.planted);
    }
    if (e) {
      ++found;
      CHECK(inst.accepts(*e));
      CHECK(restrict_to(*e, s).is_zero());
      CHECK(lift_error(*p, BitVector(6)) == *e);
    }
  }
  CHECK(found >= zero_on_s);
  CHECK(zero_on_s > 0);
}

TEST_CASE("dumer needs a p/2 : p/2 split") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // k + ell = 12 on positions 0..11, halves [0,6) and [6,12)
    auto [inst, p] = shaped(20, 10, 12, {1, 8, 15}, seed);
    SearchCounters c;
    const auto e = search_dumer(p, 3, 2, c);
    REQUIRE(e);
    CHECK(inst.accepts(*e));

    auto [inst2, p2] = shaped(20, 10, 12, {1, 3, 15}, seed);
    const auto e2 = search_dumer(p2, 3, 2, c);
    if (e2) {
      CHECK(inst2.accepts(*e2));
      CHECK(*e2 != *inst2.planted);
      const auto on_s = restrict_to(*e2, iota(12));
      CHECK(restrict_to(on_s, iota(6)).weight() == 1);
    }
  }
}

TEST_CASE("ss needs one p/4 per quarter") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // quarters of 3: [0,3) [3,6) [6,9) [9,12)
    auto [inst, p] = shaped(20, 8, 12, {0, 4, 8, 10, 17}, seed);
    SearchCounters c;
    const auto e = search_ss(p, 5, 4, c);
    REQUIRE(e);
    CHECK(inst.accepts(*e));
    CHECK(c.merge_values == 4);

    auto [inst2, p2] = shaped(20, 8, 12, {0, 1, 8, 10, 17}, seed);
    const auto e2 = search_ss(p2, 5, 4, c);
    if (e2) {
      CHECK(inst2.accepts(*e2));
      CHECK(*e2 != *inst2.planted);
    }
  }
}

TEST_CASE("ss finds every quarter-shaped solution the brute force finds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto [inst, p] = shaped(16, 8, 12, {2, 3, 7, 11}, seed);
    (void)inst;
    auto ks = ss_instance(p, 4, 4);
    CHECK(ss_four_sum(ks) == brute_force_four_sum(ks));
  }
}

TEST_CASE("mmt with dp = 0 covers even splits only") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // halves [0,6) and [6,12); list vectors have weight 1 per half
    auto [inst, p] = shaped(20, 10, 12, {0, 2, 7, 9, 14}, seed);
    SearchCounters c;
    const auto e = search_mmt(p, 5, 4, 0, c);
    REQUIRE(e);
    CHECK(inst.accepts(*e));

    auto [inst2, p2] = shaped(20, 10, 12, {0, 2, 4, 9, 14}, seed);
    const auto e2 = search_mmt(p2, 5, 4, 0, c);
    if (e2) CHECK(*e2 != *inst2.planted);
  }
}

TEST_CASE("mmt representation tally") {
  for (std::size_t dp : {0, 2}) {
    auto [inst, p] = shaped(20, 10, 12, {0, 2, 7, 9, 14}, 5);
    auto ks = mmt_instance(p, 5, 4, dp);
    const BitVector target = restrict_to(*inst.planted, iota(12));
    ks.root = [target](const BitVector& a, const BitVector& b, const BitVector& c, const BitVector& d) {
      return (a ^ b ^ c ^ d) == target;
    };
    const auto quads = rep_four_sum_all(ks);
    // C(p/2, p/4)^2 C(m/2 - p/2, dp/2)^2 with m = 12, p = 4
    const std::size_t expect = 4 * binomial(4, dp / 2) * binomial(4, dp / 2);
    CHECK(quads.size() == expect);
    CHECK(expect <= count_representations(4, 12, dp));
  }
  const auto s = mmt_split(12, 4, 24, 0);
  CHECK(s.ell2 == 2);
  CHECK(s.ell1 == 4);
}

TEST_CASE("mmt with r2 sampling") {
  const auto inst = random_instance(32, 16, 4, 8);
  const IsdParams params{Engine::mmt, 6, 4, 0, 2};
  const auto r = isd_decode(inst, params, 4, 5000);
  REQUIRE(r.status == DecodeStatus::found);
  CHECK(inst.accepts(*r.error));
}

TEST_CASE("success probabilities") {
  CHECK(success_probability(10, 2, 1, 1, 1, Variant::dumer) == doctest::Approx(0.3));
  CHECK(success_probability(10, 5, 0, 0, 0, Variant::mmtqw) == doctest::Approx(1.0));
  CHECK(success_probability(10, 5, 0, 3, 4, Variant::dumer) == 0.0);
  CHECK(success_probability(12, 6, 1, 4, 4, Variant::ssqw) == 0.0);
  CHECK(success_probability(24, 6, 2, 4, 4, Variant::ssqw) ==
        doctest::Approx(16.0 / static_cast<double>(binomial(24, 4))));

  SUBCASE("Vandermonde identity") {
    for (std::size_t n : {12, 20, 31})
      for (std::size_t w = 0; w <= 6; ++w) {
        double sum = 0;
        for (std::size_t p = 0; p <= w; ++p) sum += success_probability(n, n / 2, 2, w, p, Variant::dumer);
        CHECK(sum == doctest::Approx(1.0));
      }
  }
  SUBCASE("closed forms agree with sampling") {
    const std::size_t trials = 200000;
    for (auto v : {Variant::dumer, Variant::ssqw, Variant::mmtqw}) {
      const double p = success_probability(40, 18, 2, 6, 4, v);
      const double est = estimate_success_monte_carlo(40, 18, 2, 6, 4, v, trials, 77);
      const double sigma = std::sqrt(p * (1 - p) / trials);
      INFO(variant_name(v) << " closed " << p << " sampled " << est);
      CHECK(std::abs(est - p) <= 3 * sigma);
    }
  }
  SUBCASE("sampling is deterministic") {
    CHECK(estimate_success_monte_carlo(30, 10, 2, 4, 2, Variant::dumer, 1000, 5) ==
          estimate_success_monte_carlo(30, 10, 2, 4, 2, Variant::dumer, 1000, 5));
    CHECK_THROWS_AS(estimate_success_monte_carlo(30, 10, 2, 4, 2, Variant::dumer, 0, 5), ParameterError);
  }
}

TEST_CASE("every returned error is valid") {
  Rng rng(2024);
  const Engine engines[] = {Engine::prange, Engine::dumer, Engine::ss, Engine::mmt};
  std::size_t found = 0;
  for (int run = 0; run < 10000; ++run) {
    const std::size_t n = 12 + rng.below(9);
    const std::size_t k = 4 + rng.below(n / 2 - 3);
    const std::size_t w = 1 + rng.below(4);
    IsdParams params;
    params.engine = engines[rng.below(4)];
    if (params.engine == Engine::dumer) params.p = 2 * rng.below(w / 2 + 1);
    if (params.engine == Engine::ss || params.engine == Engine::mmt) params.p = w >= 4 ? 4 : 0;
    if (params.engine != Engine::prange) params.ell = rng.below(3);
    const auto inst = random_instance(n, k, w, rng.next());
    DecodeReport r;
    try {
      r = isd_decode(inst, params, rng.next(), 3);
    } catch (const ParameterError&) {
      continue;
    }
    if (r.status == DecodeStatus::found) {
      ++found;
      CHECK(inst.accepts(*r.error));
    }
  }
  CHECK(found > 1000);
}

TEST_CASE("report JSON") {
  const auto inst = random_instance(24, 12, 3, 1);
  const auto r = isd_decode(inst, {}, 1, 500);
  const auto js = report_to_json(r);
  CHECK(js.find("\"status\":\"found\"") != std::string::npos);
  CHECK(js.find("\"outer_iterations\":") != std::string::npos);
}
