#ifndef ISDLAB_ISD_HPP
#define ISDLAB_ISD_HPP

#include <isdlab/gf2.hpp>
#include <isdlab/ksum.hpp>
#include <isdlab/rng.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace isdlab {

enum class Engine { prange, dumer, ss, mmt };

std::string_view engine_name(Engine e);
/// Throws ParameterError for unknown names.
Engine parse_engine(std::string_view name);

struct IsdParams {
  Engine engine = Engine::prange;
  std::size_t ell = 0;
  std::size_t p = 0;
  std::size_t dp = 0;
  /// MMT only: scan this many random r2 values per search instead of all.
  std::size_t r2_samples = 0;
};

/// Validates the divisibility rules of the engine against (n, k) and pads ell
/// upward (by at most 3) until k + ell has the required residue. Throws
/// ParameterError when p/dp break the rules or the padded ell exceeds n - k.
///
///   prange: ell = p = dp = 0
///   dumer:  (k+ell) even, p even, dp = 0
///   ss:     (k+ell) and p multiples of 4, dp = 0
///   mmt:    (k+ell) even, p multiple of 4, dp even
IsdParams normalize_params(std::size_t n, std::size_t k, std::size_t w, IsdParams params);

/// Per-phase operation counters.
struct SearchCounters {
  std::size_t rank_deficient = 0;  // samples rejected by the puncture
  std::size_t list_entries = 0;    // candidate vectors built
  std::size_t join_pairs = 0;      // first-level join matches
  std::size_t merge_values = 0;    // r values scanned
  std::size_t lifts = 0;           // root predicate evaluations
};

enum class DecodeStatus { found, not_found };

struct DecodeReport {
  DecodeStatus status = DecodeStatus::not_found;
  std::optional<BitVector> error;
  std::size_t outer_iterations = 0;
  std::size_t search_invocations = 0;
  SearchCounters counters;
  IsdParams params;  // after normalization
};

/// Search_A for each engine: returns the lifted error (|e| = w, H·eᵀ = sᵀ) or
/// nullopt. The error must have weight p on S (w for prange) and split across
/// the engine's blocks as that engine requires.
std::optional<BitVector> search_prange(const PuncturedInstance& p, std::size_t w, SearchCounters& c);
std::optional<BitVector> search_dumer(const PuncturedInstance& p, std::size_t w, std::size_t pw, SearchCounters& c);
std::optional<BitVector> search_ss(const PuncturedInstance& p, std::size_t w, std::size_t pw, SearchCounters& c);
/// Scans all r2 values unless r2_samples > 0, in which case that many
/// distinct random r2 values are drawn from rng.
std::optional<BitVector> search_mmt(const PuncturedInstance& p, std::size_t w, std::size_t pw, std::size_t dp,
                                    SearchCounters& c, Rng* rng = nullptr, std::size_t r2_samples = 0);

/// The k-sum instances the SS and MMT engines solve (exposed for tests).
KSumInstance ss_instance(const PuncturedInstance& p, std::size_t w, std::size_t pw);
KSumInstance mmt_instance(const PuncturedInstance& p, std::size_t w, std::size_t pw, std::size_t dp);
/// G1/G2 widths for MMT: ell2 = min(floor(log2 reps), ceil(ell/2)), ell1 = ceil(ell/2) - ell2.
GroupSplit mmt_split(std::size_t ell, std::size_t pw, std::size_t width, std::size_t dp);

/// ISD loop. Each iteration samples S uniformly among (k+ell)-subsets with a
/// partial Fisher-Yates on stream i of `seed`, then punctures and searches.
/// Rank-deficient samples count as outer iterations but not search
/// invocations. Stops after max_iters outer iterations with not_found.
DecodeReport isd_decode(const DecodingInstance& inst, IsdParams params, std::uint64_t seed, std::size_t max_iters);

enum class Variant { dumer, ssqw, mmtqw };
std::string_view variant_name(Variant v);

/// Closed-form probability that S captures the error shape:
///   dumer, mmtqw: C(k+ell, p) C(n-k-ell, w-p) / C(n, w)
///   ssqw:         C((k+ell)/4, p/4)^4 C(n-k-ell, w-p) / C(n, w)
/// Out-of-range binomial arguments (including ssqw without 4-divisibility) give 0.
double success_probability(std::size_t n, std::size_t k, std::size_t ell, std::size_t w, std::size_t p, Variant v);

/// Exact per-search success probability of an engine with the block
/// structure it actually uses (Dumer needs a p/2:p/2 split, MMT a split whose
/// halves admit balanced representations).
double engine_success_probability(std::size_t n, std::size_t k, std::size_t w, const IsdParams& params);

/// Frequency of the support-split event for uniform weight-w errors with S
/// the first k+ell positions, split into halves/quarters as the variant uses.
double estimate_success_monte_carlo(std::size_t n, std::size_t k, std::size_t ell, std::size_t w, std::size_t p,
                                    Variant v, std::size_t trials, std::uint64_t seed);

/// {"status","error":hex|null,"outer_iterations","search_invocations","params":{...},"counters":{...}}
std::string report_to_json(const DecodeReport& r);

}  // namespace isdlab

#endif
