#include <isdlab/walk.hpp>
#include <isdlab/bits.hpp>
#include <isdlab/combinatorics.hpp>
#include <isdlab/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace isdlab {

void CostTerms::validate() const {
  if (Ts < 0 || Tc < 0 || Tu < 0) throw ParameterError("CostTerms: costs must be nonnegative");
  if (!(eps > 0 && eps <= 1)) throw ParameterError("CostTerms: eps must lie in (0, 1]");
  if (!(delta > 0 && delta <= 1)) throw ParameterError("CostTerms: delta must lie in (0, 1]");
}

double quantum_walk_cost(const CostTerms& c) {
  c.validate();
  return c.Ts + (c.Tc + c.Tu / std::sqrt(c.delta)) / std::sqrt(c.eps);
}

double classical_walk_cost(const CostTerms& c) {
  c.validate();
  return c.Ts + (c.Tc + c.Tu / c.delta) / c.eps;
}

double grover_cost(double Tf, double eps) {
  if (!(eps > 0 && eps <= 1)) throw ParameterError("grover_cost: eps must lie in (0, 1]");
  if (Tf < 0) throw ParameterError("grover_cost: Tf must be nonnegative");
  return Tf / std::sqrt(eps);
}

std::size_t default_mix_steps(const JohnsonSpec& spec) {
  spec.validate();
  double delta = 0;
  if (spec.vertex_count() <= 4096) delta = exact_spectral_gap(spec).absolute;
  if (!(delta > 1e-12)) delta = johnson_gap_formula(spec);
  const double logv = static_cast<double>(spec.m) *
                      std::log(binomial_real(static_cast<long long>(spec.n), static_cast<long long>(spec.r)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(logv / delta - 1e-9)));
}

namespace {

// Subset with O(1) membership swaps: members[0..r) inside, the rest outside.
struct SwapSubset {
  std::vector<std::size_t> members;
  std::size_t r = 0;

  void swap_random(Rng& rng) {
    const std::size_t i = static_cast<std::size_t>(rng.below(r));
    const std::size_t j = r + static_cast<std::size_t>(rng.below(members.size() - r));
    std::swap(members[i], members[j]);
  }
  std::vector<std::size_t> sorted() const {
    std::vector<std::size_t> s(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(r));
    std::sort(s.begin(), s.end());
    return s;
  }
};

WalkVertex snapshot(const std::vector<SwapSubset>& parts) {
  WalkVertex v;
  v.reserve(parts.size());
  for (const auto& p : parts) v.push_back(p.sorted());
  return v;
}

}  // namespace

WalkRecord classical_walk(const JohnsonSpec& spec, const MarkedPredicate& marked, std::uint64_t seed,
                          const WalkOptions& opt) {
  spec.validate();
  const std::size_t steps = opt.mix_steps ? opt.mix_steps : default_mix_steps(spec);
  Rng rng(seed);
  std::vector<SwapSubset> parts(spec.m);
  for (auto& p : parts) {
    p.members = rng.partial_shuffle(spec.n, spec.n);
    p.r = spec.r;
  }
  WalkRecord rec;
  rec.setup_count = 1;
  for (;;) {
    WalkVertex v = snapshot(parts);
    ++rec.check_count;
    const bool hit = marked(v);
    if (opt.trace) {
      nlohmann::ordered_json j;
      j["round"] = rec.check_count;
      j["updates"] = rec.update_count;
      j["vertex"] = v;
      j["marked"] = hit;
      *opt.trace << j.dump() << '\n';
    }
    if (hit) {
      rec.found = true;
      rec.marked_vertex = std::move(v);
      return rec;
    }
    if (rec.update_count + steps > opt.max_updates) return rec;
    for (std::size_t s = 0; s < steps; ++s) {
      parts[static_cast<std::size_t>(rng.below(spec.m))].swap_random(rng);
      ++rec.update_count;
    }
  }
}

MarkedPredicate hashed_marking(double fraction, std::uint64_t salt) {
  if (!(fraction > 0)) throw ParameterError("hashed_marking: fraction must be positive");
  if (fraction >= 1) return [](const WalkVertex&) { return true; };
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(fraction, 64));
  return [threshold, salt](const WalkVertex& v) {
    std::uint64_t h = salt;
    for (const auto& part : v) {
      h = Rng::derive(h, 0xffff);
      for (std::size_t x : part) h = Rng::derive(h, x);
    }
    return h < threshold;
  };
}

}  // namespace isdlab
