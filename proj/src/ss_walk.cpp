#include <isdlab/walk.hpp>
#include <isdlab/bits.hpp>
#include <isdlab/rng.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace isdlab {

MergeTarget merge_target_of(const KSumInstance& inst, const Quad& q) {
  const Syndrome v =
      inst.split.pi12().apply(inst.image(inst.lists[0][q[0]]) ^ inst.image(inst.lists[1][q[1]]));
  return {v >> inst.split.ell2, inst.split.pi2().apply(v)};
}

namespace {

// Ordering that counts every comparison it performs.
struct CountingLess {
  std::size_t* counter = nullptr;
  template <typename T>
  bool operator()(const T& a, const T& b) const {
    ++*counter;
    return a < b;
  }
};

template <typename T>
using Index = std::set<T, CountingLess>;

using Keyed = std::pair<Syndrome, std::size_t>;
using PairKey = std::pair<std::size_t, std::size_t>;
using PairImage = std::tuple<Syndrome, std::size_t, std::size_t>;

struct LimitExceeded {};

class SsWalk {
public:
  SsWalk(const KSumInstance& inst, std::size_t U, Syndrome r, std::size_t limit)
      : inst_(inst), U_(U), limit_(limit) {
    const BitSlice s12 = inst.split.pi12(), s0 = inst.split.pi0();
    want_[0] = r;
    want_[1] = s12.apply(inst.target) ^ r;
    target0_ = s0.apply(inst.target);
    for (std::size_t t = 0; t < 4; ++t) {
      const auto& list = inst.lists[t];
      key12_[t].resize(list.size());
      key0_[t].resize(list.size());
      for (std::size_t i = 0; i < list.size(); ++i) {
        const Syndrome f = inst.image(list[i]);
        key12_[t][i] = s12.apply(f);
        key0_[t][i] = s0.apply(f);
      }
    }
    CountingLess less{&comparisons_};
    for (auto& d : dv_) d = Index<std::size_t>(less);
    for (auto& d : df_) d = Index<Keyed>(less);
    for (auto& d : du_pairs_) d = Index<PairKey>(less);
    for (auto& d : df_pairs_) d = Index<PairImage>(less);
    du_ = Index<Quad>(less);
  }

  std::size_t ops() const noexcept { return ops_; }
  std::size_t comparisons() const noexcept { return comparisons_; }
  void reset_counters() { ops_ = comparisons_ = 0; }
  bool has_solution() const { return !du_.empty(); }
  Quad solution() const { return *du_.begin(); }

  // Full rebuild from the current subsets (no match limit).
  void setup(const std::array<std::vector<std::size_t>, 4>& members) {
    for (auto& d : dv_) d.clear();
    for (auto& d : df_) d.clear();
    for (auto& d : du_pairs_) d.clear();
    for (auto& d : df_pairs_) d.clear();
    du_.clear();
    for (std::size_t t = 0; t < 4; ++t)
      for (std::size_t i = 0; i < U_; ++i) add(t, members[t][i], false);
  }

  void remove(std::size_t t, std::size_t x) {
    ++ops_;
    dv_[t].erase(x);
    ++ops_;
    df_[t].erase({key12_[t][x], x});
    for (const PairKey& pr : partners(t, x, true)) {
      const std::size_t side = t / 2;
      ++ops_;
      du_pairs_[side].erase(pr);
      const PairImage img = pair_image(side, pr);
      ++ops_;
      df_pairs_[side].erase(img);
      for (const PairKey& other : pair_matches(side, std::get<0>(img), true)) {
        ++ops_;
        du_.erase(make_quad(side, pr, other));
      }
    }
  }

  void add(std::size_t t, std::size_t x, bool limited = true) {
    ++ops_;
    dv_[t].insert(x);
    ++ops_;
    df_[t].insert({key12_[t][x], x});
    for (const PairKey& pr : partners(t, x, limited)) {
      const std::size_t side = t / 2;
      ++ops_;
      du_pairs_[side].insert(pr);
      const PairImage img = pair_image(side, pr);
      ++ops_;
      df_pairs_[side].insert(img);
      for (const PairKey& other : pair_matches(side, std::get<0>(img), limited)) {
        const Quad q = make_quad(side, pr, other);
        const auto& L = inst_.lists;
        if (!inst_.root || inst_.root(L[0][q[0]], L[1][q[1]], L[2][q[2]], L[3][q[3]])) {
          ++ops_;
          du_.insert(q);
        }
      }
    }
  }

private:
  // Pairs (in list order) that x forms with current members of its partner list.
  std::vector<PairKey> partners(std::size_t t, std::size_t x, bool limited) {
    const std::size_t other = t ^ 1, side = t / 2;
    const Syndrome key = key12_[t][x] ^ want_[side];
    ++ops_;
    std::vector<PairKey> out;
    for (auto it = df_[other].lower_bound({key, 0}); it != df_[other].end() && it->first == key; ++it) {
      if (limited && out.size() == limit_) throw LimitExceeded{};
      out.push_back(t % 2 == 0 ? PairKey{x, it->second} : PairKey{it->second, x});
    }
    return out;
  }

  // Pair image on pi0, shifted by the target on the right side so that
  // matching pairs carry equal keys.
  PairImage pair_image(std::size_t side, const PairKey& pr) const {
    const std::size_t a = 2 * side, b = a + 1;
    Syndrome k = key0_[a][pr.first] ^ key0_[b][pr.second];
    if (side == 1) k ^= target0_;
    return {k, pr.first, pr.second};
  }

  std::vector<PairKey> pair_matches(std::size_t side, Syndrome key, bool limited) {
    const auto& idx = df_pairs_[side ^ 1];
    ++ops_;
    std::vector<PairKey> out;
    for (auto it = idx.lower_bound({key, 0, 0}); it != idx.end() && std::get<0>(*it) == key; ++it) {
      if (limited && out.size() == limit_) throw LimitExceeded{};
      out.emplace_back(std::get<1>(*it), std::get<2>(*it));
    }
    return out;
  }

  static Quad make_quad(std::size_t side, const PairKey& mine, const PairKey& other) {
    return side == 0 ? Quad{mine.first, mine.second, other.first, other.second}
                     : Quad{other.first, other.second, mine.first, mine.second};
  }

  const KSumInstance& inst_;
  std::size_t U_, limit_;
  Syndrome want_[2]{};
  Syndrome target0_ = 0;
  std::array<std::vector<Syndrome>, 4> key12_, key0_;
  std::size_t ops_ = 0, comparisons_ = 0;

  std::array<Index<std::size_t>, 4> dv_;
  std::array<Index<Keyed>, 4> df_;
  std::array<Index<PairKey>, 2> du_pairs_;
  std::array<Index<PairImage>, 2> df_pairs_;
  Index<Quad> du_;
};

}  // namespace

SsWalkRecord emulate_ss_walk(const KSumInstance& inst, std::size_t U, MergeTarget r, std::uint64_t seed,
                             const SsWalkOptions& opt) {
  if (U == 0) throw ParameterError("emulate_ss_walk: U must be positive");
  for (const auto& l : inst.lists)
    if (U > l.size()) throw ParameterError("emulate_ss_walk: U exceeds a list size");
  if (inst.split.ell2 < 64 && (r.r2 >> inst.split.ell2) != 0) throw ParameterError("emulate_ss_walk: r2 wider than ell2");
  if (inst.split.ell1 < 64 && (r.r1 >> inst.split.ell1) != 0) throw ParameterError("emulate_ss_walk: r1 wider than ell1");

  const std::size_t L = opt.match_limit;
  SsWalkRecord rec;
  rec.stats.match_limit = L;
  rec.stats.update_op_limit = 6 + 2 * L * (3 + L);
  const double log_size = std::log2(static_cast<double>(L * L * U + 1));
  rec.stats.comparison_limit = static_cast<std::size_t>(
      static_cast<double>(rec.stats.update_op_limit) * (2 * std::ceil(log_size) + static_cast<double>(L) + 4));

  Rng rng(seed);
  // members[t][0..U) is the current subset of list t
  std::array<std::vector<std::size_t>, 4> members;
  for (std::size_t t = 0; t < 4; ++t) members[t] = rng.partial_shuffle(inst.lists[t].size(), inst.lists[t].size());

  SsWalk ds(inst, U, (r.r1 << inst.split.ell2) | r.r2, L);
  auto full_setup = [&] {
    ds.reset_counters();
    ds.setup(members);
    rec.stats.setup_ops += ds.ops();
    ++rec.walk.setup_count;
  };
  auto check = [&] {
    ++rec.walk.check_count;
    if (!ds.has_solution()) return false;
    rec.walk.found = true;
    rec.solution = ds.solution();
    WalkVertex v;
    for (const auto& m : members) {
      std::vector<std::size_t> s(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(U));
      std::sort(s.begin(), s.end());
      v.push_back(std::move(s));
    }
    rec.walk.marked_vertex = std::move(v);
    return true;
  };

  full_setup();
  if (check()) return rec;
  while (rec.walk.update_count < opt.budget) {
    const std::size_t t = static_cast<std::size_t>(rng.below(4));
    const std::size_t size = members[t].size();
    const std::size_t i = static_cast<std::size_t>(rng.below(U));
    const std::size_t j = U + static_cast<std::size_t>(rng.below(size - U));
    const std::size_t out = members[t][i], in = members[t][j];
    std::swap(members[t][i], members[t][j]);
    ++rec.walk.update_count;
    ds.reset_counters();
    bool reinit = false;
    try {
      ds.remove(t, out);
      ds.add(t, in);
    } catch (const LimitExceeded&) {
      reinit = true;
    }
    const std::size_t ops = ds.ops(), cmps = ds.comparisons();
    rec.stats.max_update_ops = std::max(rec.stats.max_update_ops, ops);
    rec.stats.max_update_comparisons = std::max(rec.stats.max_update_comparisons, cmps);
    if (!reinit && (ops > rec.stats.update_op_limit || cmps > rec.stats.comparison_limit))
      ++rec.stats.limit_violations;
    if (reinit) {
      ++rec.stats.reinitializations;
      full_setup();
    }
    if (check()) return rec;
  }
  return rec;
}

}  // namespace isdlab
