#ifndef ISDLAB_GF2_HPP
#define ISDLAB_GF2_HPP

#include <isdlab/bits.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isdlab {

/// Syndrome decoding problem: find e with |e| = w and H·eᵀ = sᵀ.
struct DecodingInstance {
  BitMatrix H;  // (n-k) x n, full rank
  BitVector s;  // length n-k
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t w = 0;
  std::uint64_t seed = 0;
  std::optional<BitVector> planted;

  /// True when H·eᵀ = sᵀ and |e| = w.
  bool accepts(const BitVector& e) const;
};

/// A reduced instance on the position list S (k+ℓ positions, in order) plus
/// the data needed to lift a solution back to length n.
///
/// With U the row transform found by elimination,
///   U·H = [ Hp   0 ]   U·sᵀ = [ sp  ]
///         [ Hpp  I ]          [ spp ]
/// where the column blocks are S (in list order) and the complement
/// (ascending order).
struct PuncturedInstance {
  BitMatrix Hp;                         // ell x (k+ell)
  BitVector sp;                         // ell
  BitMatrix Hpp;                        // (n-k-ell) x (k+ell)
  BitVector spp;                        // n-k-ell
  BitMatrix U;                          // (n-k) x (n-k)
  std::vector<std::size_t> positions;   // S, column order of Hp
  std::vector<std::size_t> complement;  // ascending
  std::size_t n = 0;

  std::size_t ell() const noexcept { return Hp.rows(); }
  std::size_t width() const noexcept { return positions.size(); }
};

/// Random full-rank code with a uniformly planted weight-w error.
/// Throws ParameterError unless 0 < k < n and w <= n.
DecodingInstance random_instance(std::size_t n, std::size_t k, std::size_t w, std::uint64_t seed);

/// Instance from an explicit matrix and planted error (s is computed).
DecodingInstance make_instance(BitMatrix H, std::size_t w, BitVector planted);

/// Gauss-Jordan elimination on the columns outside S, pivoting in
/// complement-column order with the lowest available row index. Returns
/// nullopt exactly when H restricted to the complement of S is rank-deficient.
std::optional<PuncturedInstance> gaussian_puncture(const DecodingInstance& inst,
                                                   std::span<const std::size_t> positions);

/// Unique e with e|S = eprime and H·eᵀ = sᵀ. Throws ContractViolation if
/// Hp·eprimeᵀ != spᵀ.
BitVector lift_error(const PuncturedInstance& p, const BitVector& eprime);

/// Weight of the lifted error outside S, without building it.
std::size_t lifted_outside_weight(const PuncturedInstance& p, const BitVector& eprime);

/// e restricted to the listed positions, in list order.
BitVector restrict_to(const BitVector& e, std::span<const std::size_t> positions);

/// {"n","k","w","H":[hex rows],"s":hex,"seed"}; hex uses BitVector::to_hex order.
std::string instance_to_json(const DecodingInstance& inst);
/// Parses the format above; throws ParameterError on malformed input.
DecodingInstance instance_from_json(std::string_view text);

}  // namespace isdlab

#endif
