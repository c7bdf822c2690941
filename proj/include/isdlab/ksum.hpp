#ifndef ISDLAB_KSUM_HPP
#define ISDLAB_KSUM_HPP

#include <isdlab/bits.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace isdlab {

using Syndrome = std::uint64_t;

/// Contiguous bit-slice of an ell-bit syndrome word.
struct BitSlice {
  unsigned offset = 0;
  unsigned width = 0;

  Syndrome mask() const noexcept {
    return width == 0 ? 0 : low_mask() << offset;
  }
  Syndrome low_mask() const noexcept {
    return width == 0 ? 0 : width >= 64 ? ~Syndrome(0) : (Syndrome(1) << width) - 1;
  }
  Syndrome apply(Syndrome x) const noexcept { return width == 0 ? 0 : (x >> offset) & low_mask(); }
};

/// Factorization G = G0 x G1 x G2 of F_2^ell as bit-slices of the syndrome:
/// G2 holds the lowest ell2 bits and G1 the next ell1; G0 takes the rest.
struct GroupSplit {
  unsigned ell = 0;
  unsigned ell1 = 0;
  unsigned ell2 = 0;

  GroupSplit() = default;
  GroupSplit(unsigned ell, unsigned ell1, unsigned ell2 = 0);

  unsigned ell0() const noexcept { return ell - ell1 - ell2; }
  BitSlice pi0() const noexcept { return {ell1 + ell2, ell0()}; }
  BitSlice pi1() const noexcept { return {ell2, ell1}; }
  BitSlice pi2() const noexcept { return {0, ell2}; }
  /// G1 x G2 as one slice (low ell1+ell2 bits).
  BitSlice pi12() const noexcept { return {0, ell1 + ell2}; }
};

/// The r of the Shamir-Schroeppel merge: r1 in G1 and an optional r2 in G2.
struct MergeTarget {
  Syndrome r1 = 0;
  Syndrome r2 = 0;
};

/// Indices into V00, V01, V10, V11.
using Quad = std::array<std::size_t, 4>;

/// Root predicate g, called with the four candidate vectors; true means
/// g(...) = 0, i.e. the tuple is accepted.
using RootPredicate = std::function<bool(const BitVector&, const BitVector&, const BitVector&, const BitVector&)>;

/// Generalized 4-sum instance over G = F_2^ell with f(v) = Hp·vᵀ.
struct KSumInstance {
  BitMatrix Hp;  // ell x m, ell <= 64
  Syndrome target = 0;
  std::array<std::vector<BitVector>, 4> lists;  // V00, V01, V10, V11
  GroupSplit split;
  RootPredicate root;  // empty means g == 0 everywhere

  /// f(v) packed as a word, bit i = row i.
  Syndrome image(const BitVector& v) const { return Hp.multiply_word(v); }
  bool accepts(const Quad& q) const;
};

/// Observable work and memory of one solver run.
struct KSumStats {
  std::size_t merge_values = 0;    // r values scanned
  std::size_t pair_matches = 0;    // sum of first-level join sizes
  std::size_t subset_sum_hits = 0; // tuples passing the full sum (g evaluated)
  std::size_t peak_entries = 0;    // max intermediate entries alive at once
};

using Pair = std::pair<std::size_t, std::size_t>;

/// All (i, j) with proj(a[i] + b[j]) = target on precomputed images, sorted.
std::vector<Pair> two_sum_join(std::span<const Syndrome> a, std::span<const Syndrome> b, Syndrome target,
                               BitSlice proj);

/// Vector form: images computed with Hp.
std::vector<Pair> two_sum_join(std::span<const BitVector> a, std::span<const BitVector> b, const BitMatrix& Hp,
                               Syndrome target, BitSlice proj);

/// Classical Shamir-Schroeppel 4-sum: scans every r in G1 in increasing order,
/// keeping only the current r's intermediate lists alive. Requires ell2 = 0.
std::vector<Quad> ss_four_sum(const KSumInstance& inst, KSumStats* stats = nullptr);

/// Representation-technique 4-sum for one fixed r2: scans r1 over G1 and
/// merges on pi12; the final merge is on pi0. Results sorted.
std::vector<Quad> rep_four_sum(const KSumInstance& inst, Syndrome r2, KSumStats* stats = nullptr);
inline std::vector<Quad> rep_four_sum(const KSumInstance& inst, MergeTarget fixed, KSumStats* stats = nullptr) {
  return rep_four_sum(inst, fixed.r2, stats);
}

/// rep_four_sum over every r2 in G2 (disjoint union), sorted.
std::vector<Quad> rep_four_sum_all(const KSumInstance& inst, KSumStats* stats = nullptr);

/// Exhaustive filter; throws OracleTooLarge when the product of list sizes exceeds 2^24.
std::vector<Quad> brute_force_four_sum(const KSumInstance& inst);

class OracleTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// C(p, p/2) * C(m - p, dp): ways to write a weight-p vector of length m as
/// a sum of two weight p/2 + dp vectors. Throws ParameterError for odd p or
/// dp > m - p.
std::uint64_t count_representations(std::size_t p, std::size_t m, std::size_t dp);

/// Writes one JSON object per tuple: {"r":..., "quad":[i00,i01,i10,i11]}.
void dump_quads_jsonl(std::ostream& os, const KSumInstance& inst, std::span<const Quad> quads);

/// Random instance with four disjoint quarter-support lists of distinct
/// weight-`weight` vectors (each of size list_size, m = 4*quarter) and a
/// target planted as the image sum of one random element per list.
struct PlantedKSum {
  KSumInstance inst;
  Quad planted;
};
PlantedKSum make_planted_ksum(std::size_t quarter, std::size_t weight, std::size_t list_size, GroupSplit split,
                              std::uint64_t seed);

}  // namespace isdlab

#endif
