#include <isdlab/ksum.hpp>
#include <isdlab/combinatorics.hpp>
#include <isdlab/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <set>

namespace isdlab {

GroupSplit::GroupSplit(unsigned ell_, unsigned ell1_, unsigned ell2_) : ell(ell_), ell1(ell1_), ell2(ell2_) {
  if (ell > 64) throw ParameterError("GroupSplit: ell > 64");
  if (ell1 + ell2 > ell) throw ParameterError("GroupSplit: ell1 + ell2 > ell");
}

bool KSumInstance::accepts(const Quad& q) const {
  const Syndrome sum =
      image(lists[0][q[0]]) ^ image(lists[1][q[1]]) ^ image(lists[2][q[2]]) ^ image(lists[3][q[3]]);
  if (sum != target) return false;
  return !root || root(lists[0][q[0]], lists[1][q[1]], lists[2][q[2]], lists[3][q[3]]);
}

std::vector<Pair> two_sum_join(std::span<const Syndrome> a, std::span<const Syndrome> b, Syndrome target,
                               BitSlice proj) {
  std::vector<std::pair<Syndrome, std::size_t>> keyed(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) keyed[j] = {proj.apply(b[j]), j};
  std::sort(keyed.begin(), keyed.end());
  const Syndrome want = target & proj.low_mask();
  std::vector<Pair> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Syndrome key = want ^ proj.apply(a[i]);
    auto lo = std::lower_bound(keyed.begin(), keyed.end(), std::pair<Syndrome, std::size_t>{key, 0});
    for (; lo != keyed.end() && lo->first == key; ++lo) out.emplace_back(i, lo->second);
  }
  return out;
}

std::vector<Pair> two_sum_join(std::span<const BitVector> a, std::span<const BitVector> b, const BitMatrix& Hp,
                               Syndrome target, BitSlice proj) {
  std::vector<Syndrome> ia(a.size()), ib(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ia[i] = Hp.multiply_word(a[i]);
  for (std::size_t j = 0; j < b.size(); ++j) ib[j] = Hp.multiply_word(b[j]);
  return two_sum_join(ia, ib, target, proj);
}

namespace {

struct Images {
  std::array<std::vector<Syndrome>, 4> v;
  std::size_t total = 0;
};

Images compute_images(const KSumInstance& inst) {
  Images im;
  for (std::size_t t = 0; t < 4; ++t) {
    im.v[t].reserve(inst.lists[t].size());
    for (const auto& x : inst.lists[t]) im.v[t].push_back(inst.image(x));
    im.total += inst.lists[t].size();
  }
  return im;
}

// Solves the 4-sum restricted to first-level merge value r on `slice`
// (the complementary slice is pi0), appending accepted tuples.
void merge_for_r(const KSumInstance& inst, const Images& im, BitSlice slice, Syndrome r, std::vector<Quad>& out,
                 KSumStats* stats) {
  // r and the join targets are in slice coordinates.
  const auto left = two_sum_join(im.v[0], im.v[1], r, slice);
  const auto right = two_sum_join(im.v[2], im.v[3], slice.apply(inst.target) ^ r, slice);

  const BitSlice p0 = inst.split.pi0();
  std::vector<Syndrome> lsum(left.size()), rsum(right.size());
  for (std::size_t i = 0; i < left.size(); ++i) lsum[i] = im.v[0][left[i].first] ^ im.v[1][left[i].second];
  for (std::size_t j = 0; j < right.size(); ++j) rsum[j] = im.v[2][right[j].first] ^ im.v[3][right[j].second];
  const auto joined = two_sum_join(lsum, rsum, p0.apply(inst.target), p0);

  if (stats) {
    ++stats->merge_values;
    stats->pair_matches += left.size() + right.size();
    stats->subset_sum_hits += joined.size();
    stats->peak_entries = std::max(stats->peak_entries, im.total + left.size() + right.size());
  }
  for (const auto& [i, j] : joined) {
    const Quad q{left[i].first, left[i].second, right[j].first, right[j].second};
    // g is evaluated only on tuples that already satisfy the subset-sum condition
    if (!inst.root ||
        inst.root(inst.lists[0][q[0]], inst.lists[1][q[1]], inst.lists[2][q[2]], inst.lists[3][q[3]]))
      out.push_back(q);
  }
}

void check_split(const KSumInstance& inst) {
  if (inst.Hp.rows() != inst.split.ell) throw ParameterError("k-sum: Hp rows != split.ell");
  if (inst.split.ell1 > 30 || inst.split.ell2 > 30) throw ParameterError("k-sum: merge slices wider than 30 bits");
}

}  // namespace

std::vector<Quad> ss_four_sum(const KSumInstance& inst, KSumStats* stats) {
  check_split(inst);
  if (inst.split.ell2 != 0) throw ParameterError("ss_four_sum: requires ell2 = 0");
  const Images im = compute_images(inst);
  std::vector<Quad> out;
  const Syndrome values = Syndrome(1) << inst.split.ell1;
  for (Syndrome r = 0; r < values; ++r) merge_for_r(inst, im, inst.split.pi1(), r, out, stats);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quad> rep_four_sum(const KSumInstance& inst, Syndrome r2, KSumStats* stats) {
  check_split(inst);
  if (inst.split.ell2 < 64 && (r2 >> inst.split.ell2) != 0) throw ParameterError("rep_four_sum: r2 wider than ell2");
  const Images im = compute_images(inst);
  std::vector<Quad> out;
  const Syndrome values = Syndrome(1) << inst.split.ell1;
  for (Syndrome r1 = 0; r1 < values; ++r1)
    merge_for_r(inst, im, inst.split.pi12(), (r1 << inst.split.ell2) | r2, out, stats);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quad> rep_four_sum_all(const KSumInstance& inst, KSumStats* stats) {
  std::vector<Quad> out;
  const Syndrome values = Syndrome(1) << inst.split.ell2;
  for (Syndrome r2 = 0; r2 < values; ++r2) {
    auto part = rep_four_sum(inst, r2, stats);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quad> brute_force_four_sum(const KSumInstance& inst) {
  long double product = 1;
  for (const auto& l : inst.lists) product *= static_cast<long double>(l.size());
  if (product > static_cast<long double>(1u << 24)) throw OracleTooLarge("brute_force_four_sum: product of list sizes > 2^24");
  const Images im = compute_images(inst);
  std::vector<Quad> out;
  for (std::size_t a = 0; a < im.v[0].size(); ++a)
    for (std::size_t b = 0; b < im.v[1].size(); ++b)
      for (std::size_t c = 0; c < im.v[2].size(); ++c)
        for (std::size_t d = 0; d < im.v[3].size(); ++d) {
          if ((im.v[0][a] ^ im.v[1][b] ^ im.v[2][c] ^ im.v[3][d]) != inst.target) continue;
          if (inst.root && !inst.root(inst.lists[0][a], inst.lists[1][b], inst.lists[2][c], inst.lists[3][d]))
            continue;
          out.push_back({a, b, c, d});
        }
  return out;
}

std::uint64_t count_representations(std::size_t p, std::size_t m, std::size_t dp) {
  if (p % 2 != 0) throw ParameterError("count_representations: p must be even");
  if (p > m || dp > m - p) throw ParameterError("count_representations: need 0 <= dp <= m - p");
  return binomial(p, p / 2) * binomial(m - p, dp);
}

void dump_quads_jsonl(std::ostream& os, const KSumInstance& inst, std::span<const Quad> quads) {
  const BitSlice s12 = inst.split.pi12();
  for (const auto& q : quads) {
    nlohmann::ordered_json j;
    j["r"] = s12.apply(inst.image(inst.lists[0][q[0]]) ^ inst.image(inst.lists[1][q[1]]));
    j["quad"] = {q[0], q[1], q[2], q[3]};
    os << j.dump() << '\n';
  }
}

PlantedKSum make_planted_ksum(std::size_t quarter, std::size_t weight, std::size_t list_size, GroupSplit split,
                              std::uint64_t seed) {
  if (weight > quarter) throw ParameterError("make_planted_ksum: weight > quarter");
  if (list_size == 0 || list_size > binomial(quarter, weight))
    throw ParameterError("make_planted_ksum: list_size must be in [1, C(quarter, weight)]");
  const std::size_t m = 4 * quarter;
  Rng rng(seed);
  PlantedKSum out;
  out.inst.split = split;
  out.inst.Hp = BitMatrix(split.ell, m);
  for (std::size_t i = 0; i < split.ell; ++i)
    for (std::size_t c = 0; c < m; ++c)
      if (rng.coin()) out.inst.Hp.set(i, c);
  for (std::size_t t = 0; t < 4; ++t) {
    std::set<BitVector> seen;
    auto& list = out.inst.lists[t];
    while (list.size() < list_size) {
      auto pos = rng.partial_shuffle(quarter, weight);
      for (auto& p : pos) p += t * quarter;
      BitVector v = BitVector::from_indices(m, pos);
      if (seen.insert(v).second) list.push_back(std::move(v));
    }
    out.planted[t] = static_cast<std::size_t>(rng.below(list_size));
  }
  Syndrome target = 0;
  for (std::size_t t = 0; t < 4; ++t) target ^= out.inst.image(out.inst.lists[t][out.planted[t]]);
  out.inst.target = target;
  return out;
}

}  // namespace isdlab
