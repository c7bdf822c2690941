#include <isdlab/isd.hpp>
#include <isdlab/combinatorics.hpp>

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <set>

namespace isdlab {

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::prange: return "prange";
    case Engine::dumer: return "dumer";
    case Engine::ss: return "ss";
    case Engine::mmt: return "mmt";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "prange") return Engine::prange;
  if (name == "dumer") return Engine::dumer;
  if (name == "ss") return Engine::ss;
  if (name == "mmt") return Engine::mmt;
  throw ParameterError("unknown engine '" + std::string(name) + "'");
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::dumer: return "dumer";
    case Variant::ssqw: return "ssqw";
    case Variant::mmtqw: return "mmtqw";
  }
  return "?";
}

IsdParams normalize_params(std::size_t n, std::size_t k, std::size_t w, IsdParams params) {
  if (k == 0 || k >= n) throw ParameterError("isd: need 0 < k < n");
  if (w > n) throw ParameterError("isd: need w <= n");
  std::size_t modulus = 1;
  switch (params.engine) {
    case Engine::prange:
      if (params.ell || params.p || params.dp) throw ParameterError("prange: ell, p and dp must be 0");
      break;
    case Engine::dumer:
      if (params.p % 2) throw ParameterError("dumer: p must be even");
      if (params.dp) throw ParameterError("dumer: dp must be 0");
      modulus = 2;
      break;
    case Engine::ss:
      if (params.p % 4) throw ParameterError("ss: p must be a multiple of 4");
      if (params.dp) throw ParameterError("ss: dp must be 0");
      modulus = 4;
      break;
    case Engine::mmt:
      if (params.p % 4) throw ParameterError("mmt: p must be a multiple of 4");
      if (params.dp % 2) throw ParameterError("mmt: dp must be even");
      modulus = 2;
      break;
  }
  while ((k + params.ell) % modulus) ++params.ell;
  if (params.ell > n - k) throw ParameterError("isd: ell exceeds n - k after padding");
  if (params.ell > 64) throw ParameterError("isd: ell > 64 is not supported");
  if (params.p > w || params.p > k + params.ell) throw ParameterError("isd: need p <= min(w, k + ell)");
  if (params.engine == Engine::mmt) {
    const std::size_t width = k + params.ell;
    if (params.p / 4 + params.dp / 2 > width / 2) throw ParameterError("mmt: list weight exceeds half width");
    if (params.dp > width - params.p) throw ParameterError("mmt: dp > k + ell - p");
  }
  if (params.engine != Engine::mmt && params.r2_samples) throw ParameterError("r2 sampling applies to mmt only");
  return params;
}

namespace {

// e' -> lifted error when its outside weight completes w; counts the lift.
std::optional<BitVector> lift_if_weight(const PuncturedInstance& p, const BitVector& eprime, std::size_t w,
                                        SearchCounters& c) {
  ++c.lifts;
  const std::size_t inside = eprime.weight();
  if (inside > w) return std::nullopt;
  if (lifted_outside_weight(p, eprime) != w - inside) return std::nullopt;
  return lift_error(p, eprime);
}

// Root predicate for k-sum engines: sum of the four vectors has weight
// exactly pw and lifts to total weight w.
RootPredicate weight_root(const PuncturedInstance& p, std::size_t w, std::size_t pw) {
  return [&p, w, pw](const BitVector& a, const BitVector& b, const BitVector& c, const BitVector& d) {
    BitVector e = a ^ b;
    e ^= c;
    e ^= d;
    if (e.weight() != pw || pw > w) return false;
    return lifted_outside_weight(p, e) == w - pw;
  };
}

BitVector quad_sum(const KSumInstance& inst, const Quad& q) {
  BitVector e = inst.lists[0][q[0]] ^ inst.lists[1][q[1]];
  e ^= inst.lists[2][q[2]];
  e ^= inst.lists[3][q[3]];
  return e;
}

}  // namespace

std::optional<BitVector> search_prange(const PuncturedInstance& p, std::size_t w, SearchCounters& c) {
  if (p.ell() != 0) throw ParameterError("search_prange: expects ell = 0");
  return lift_if_weight(p, BitVector(p.width()), w, c);
}

std::optional<BitVector> search_dumer(const PuncturedInstance& p, std::size_t w, std::size_t pw, SearchCounters& c) {
  const std::size_t m = p.width();
  if (m % 2 || pw % 2) throw ParameterError("search_dumer: k+ell and p must be even");
  const auto left = weight_vectors(m, 0, m / 2, pw / 2);
  const auto right = weight_vectors(m, m / 2, m / 2, pw / 2);
  c.list_entries += left.size() + right.size();
  const auto pairs = two_sum_join(left, right, p.Hp, p.sp.low_word(), BitSlice{0, static_cast<unsigned>(p.ell())});
  c.join_pairs += pairs.size();
  for (const auto& [i, j] : pairs)
    if (auto e = lift_if_weight(p, left[i] ^ right[j], w, c)) return e;
  return std::nullopt;
}

KSumInstance ss_instance(const PuncturedInstance& p, std::size_t w, std::size_t pw) {
  const std::size_t m = p.width();
  if (m % 4 || pw % 4) throw ParameterError("search_ss: k+ell and p must be multiples of 4");
  const std::size_t q = m / 4;
  KSumInstance inst;
  inst.Hp = p.Hp;
  inst.target = p.sp.low_word();
  const auto ell = static_cast<unsigned>(p.ell());
  inst.split = GroupSplit(ell, (ell + 1) / 2, 0);
  for (std::size_t t = 0; t < 4; ++t) inst.lists[t] = weight_vectors(m, t * q, q, pw / 4);
  inst.root = weight_root(p, w, pw);
  return inst;
}

std::optional<BitVector> search_ss(const PuncturedInstance& p, std::size_t w, std::size_t pw, SearchCounters& c) {
  const KSumInstance inst = ss_instance(p, w, pw);
  for (const auto& l : inst.lists) c.list_entries += l.size();
  KSumStats stats;
  const auto quads = ss_four_sum(inst, &stats);
  c.join_pairs += stats.pair_matches;
  c.merge_values += stats.merge_values;
  c.lifts += stats.subset_sum_hits;
  if (quads.empty()) return std::nullopt;
  return lift_error(p, quad_sum(inst, quads.front()));
}

GroupSplit mmt_split(std::size_t ell, std::size_t pw, std::size_t width, std::size_t dp) {
  const std::uint64_t reps = count_representations(pw, width, dp);
  const unsigned half = static_cast<unsigned>((ell + 1) / 2);
  const unsigned log_reps = reps ? static_cast<unsigned>(std::bit_width(reps) - 1) : 0;
  const unsigned ell2 = std::min(log_reps, half);
  return GroupSplit(static_cast<unsigned>(ell), half - ell2, ell2);
}

KSumInstance mmt_instance(const PuncturedInstance& p, std::size_t w, std::size_t pw, std::size_t dp) {
  const std::size_t m = p.width();
  if (m % 2 || pw % 4 || dp % 2) throw ParameterError("search_mmt: need k+ell even, p = 0 mod 4, dp even");
  const std::size_t weight = pw / 4 + dp / 2;
  KSumInstance inst;
  inst.Hp = p.Hp;
  inst.target = p.sp.low_word();
  inst.split = mmt_split(p.ell(), pw, m, dp);
  inst.lists[0] = weight_vectors(m, 0, m / 2, weight);
  inst.lists[1] = weight_vectors(m, m / 2, m / 2, weight);
  inst.lists[2] = inst.lists[0];
  inst.lists[3] = inst.lists[1];
  inst.root = weight_root(p, w, pw);
  return inst;
}

std::optional<BitVector> search_mmt(const PuncturedInstance& p, std::size_t w, std::size_t pw, std::size_t dp,
                                    SearchCounters& c, Rng* rng, std::size_t r2_samples) {
  const KSumInstance inst = mmt_instance(p, w, pw, dp);
  for (const auto& l : inst.lists) c.list_entries += l.size();
  const Syndrome values = Syndrome(1) << inst.split.ell2;
  std::vector<Syndrome> order;
  if (r2_samples == 0 || r2_samples >= values) {
    order.resize(values);
    for (Syndrome v = 0; v < values; ++v) order[v] = v;
  } else {
    if (!rng) throw ParameterError("search_mmt: r2 sampling needs an rng");
    for (std::size_t i : rng->partial_shuffle(values, r2_samples)) order.push_back(i);
  }
  for (Syndrome r2 : order) {
    KSumStats stats;
    const auto quads = rep_four_sum(inst, r2, &stats);
    c.join_pairs += stats.pair_matches;
    c.merge_values += stats.merge_values;
    c.lifts += stats.subset_sum_hits;
    if (!quads.empty()) return lift_error(p, quad_sum(inst, quads.front()));
  }
  return std::nullopt;
}

DecodeReport isd_decode(const DecodingInstance& inst, IsdParams params, std::uint64_t seed, std::size_t max_iters) {
  DecodeReport report;
  report.params = normalize_params(inst.n, inst.k, inst.w, params);
  params = report.params;

  if (inst.w == 0) {
    report.outer_iterations = 1;
    if (inst.s.is_zero()) {
      report.status = DecodeStatus::found;
      report.error = BitVector(inst.n);
    }
    return report;
  }

  const std::size_t width = inst.k + params.ell;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    ++report.outer_iterations;
    Rng rng(Rng::derive(seed, iter));
    const auto positions = rng.partial_shuffle(inst.n, width);
    const auto punctured = gaussian_puncture(inst, positions);
    if (!punctured) {
      ++report.counters.rank_deficient;
      continue;
    }
    ++report.search_invocations;
    std::optional<BitVector> e;
    switch (params.engine) {
      case Engine::prange: e = search_prange(*punctured, inst.w, report.counters); break;
      case Engine::dumer: e = search_dumer(*punctured, inst.w, params.p, report.counters); break;
      case Engine::ss: e = search_ss(*punctured, inst.w, params.p, report.counters); break;
      case Engine::mmt:
        e = search_mmt(*punctured, inst.w, params.p, params.dp, report.counters, &rng, params.r2_samples);
        break;
    }
    if (e) {
      if (!inst.accepts(*e)) throw ContractViolation("isd_decode: engine returned an invalid error");
      report.status = DecodeStatus::found;
      report.error = std::move(e);
      return report;
    }
  }
  return report;
}

namespace {

double tail_factor(std::size_t n, std::size_t k, std::size_t ell, std::size_t w, std::size_t p) {
  if (p > w || k + ell > n) return 0.0;
  return binomial_real(static_cast<long long>(n - k - ell), static_cast<long long>(w - p)) /
         binomial_real(static_cast<long long>(n), static_cast<long long>(w));
}

// Balanced representations of a weight-t half as a sum of two weight-q
// vectors on `half` positions.
bool half_admissible(std::size_t half, std::size_t t, std::size_t q) {
  return t % 2 == 0 && t / 2 <= q && q - t / 2 <= half - t && t <= half;
}

}  // namespace

double success_probability(std::size_t n, std::size_t k, std::size_t ell, std::size_t w, std::size_t p, Variant v) {
  if (k + ell > n || p > w || w > n) return 0.0;
  const double tail = tail_factor(n, k, ell, w, p);
  switch (v) {
    case Variant::dumer:
    case Variant::mmtqw:
      return binomial_real(static_cast<long long>(k + ell), static_cast<long long>(p)) * tail;
    case Variant::ssqw: {
      if ((k + ell) % 4 || p % 4) return 0.0;
      const double q = binomial_real(static_cast<long long>((k + ell) / 4), static_cast<long long>(p / 4));
      return q * q * q * q * tail;
    }
  }
  return 0.0;
}

double engine_success_probability(std::size_t n, std::size_t k, std::size_t w, const IsdParams& params) {
  const std::size_t ell = params.ell, p = params.p, m = k + params.ell;
  if (m > n || p > w) return 0.0;
  const double tail = tail_factor(n, k, ell, w, p);
  switch (params.engine) {
    case Engine::prange:
      return binomial_real(static_cast<long long>(n - k), static_cast<long long>(w)) /
             binomial_real(static_cast<long long>(n), static_cast<long long>(w));
    case Engine::dumer: {
      const double h = binomial_real(static_cast<long long>(m / 2), static_cast<long long>(p / 2));
      return h * h * tail;
    }
    case Engine::ss: return success_probability(n, k, ell, w, p, Variant::ssqw);
    case Engine::mmt: {
      const std::size_t half = m / 2, q = p / 4 + params.dp / 2;
      double ways = 0;
      for (std::size_t t = 0; t <= p; ++t)
        if (half_admissible(half, t, q) && half_admissible(half, p - t, q))
          ways += binomial_real(static_cast<long long>(half), static_cast<long long>(t)) *
                  binomial_real(static_cast<long long>(half), static_cast<long long>(p - t));
      return ways * tail;
    }
  }
  return 0.0;
}

double estimate_success_monte_carlo(std::size_t n, std::size_t k, std::size_t ell, std::size_t w, std::size_t p,
                                    Variant v, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ParameterError("estimate_success_monte_carlo: trials must be >= 1");
  if (w > n || k + ell > n) throw ParameterError("estimate_success_monte_carlo: need w <= n and k + ell <= n");
  const std::size_t m = k + ell;
  if (v == Variant::ssqw && (m % 4 || p % 4)) return 0.0;
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto support = rng.partial_shuffle(n, w);
    std::size_t inside = 0;
    std::array<std::size_t, 4> quarter{};
    for (std::size_t pos : support)
      if (pos < m) {
        ++inside;
        if (v == Variant::ssqw) ++quarter[pos / (m / 4)];
      }
    bool ok = inside == p;
    if (ok && v == Variant::ssqw)
      for (std::size_t x : quarter) ok = ok && x == p / 4;
    if (ok) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string report_to_json(const DecodeReport& r) {
  nlohmann::ordered_json j;
  j["status"] = r.status == DecodeStatus::found ? "found" : "not_found";
  if (r.error)
    j["error"] = r.error->to_hex();
  else
    j["error"] = nullptr;
  j["outer_iterations"] = r.outer_iterations;
  j["search_invocations"] = r.search_invocations;
  j["params"] = {{"engine", std::string(engine_name(r.params.engine))},
                 {"ell", r.params.ell},
                 {"p", r.params.p},
                 {"dp", r.params.dp},
                 {"r2_samples", r.params.r2_samples}};
  j["counters"] = {{"rank_deficient", r.counters.rank_deficient},
                   {"list_entries", r.counters.list_entries},
                   {"join_pairs", r.counters.join_pairs},
                   {"merge_values", r.counters.merge_values},
                   {"lifts", r.counters.lifts}};
  return j.dump();
}

}  // namespace isdlab
