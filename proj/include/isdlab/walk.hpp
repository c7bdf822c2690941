#ifndef ISDLAB_WALK_HPP
#define ISDLAB_WALK_HPP

#include <isdlab/johnson.hpp>
#include <isdlab/ksum.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace isdlab {

/// Abstract costs of a walk-based search.
struct CostTerms {
  double Ts = 0;     // setup
  double Tc = 0;     // check
  double Tu = 0;     // update
  double eps = 1;    // marked fraction, (0, 1]
  double delta = 1;  // spectral gap, (0, 1]
  std::size_t U = 0;

  /// Throws ParameterError on negative costs or eps/delta outside (0, 1].
  void validate() const;
};

/// Ts + (Tc + Tu / sqrt(delta)) / sqrt(eps)
double quantum_walk_cost(const CostTerms& c);
/// Ts + (Tc + Tu / delta) / eps
double classical_walk_cost(const CostTerms& c);
/// Tf / sqrt(eps)
double grover_cost(double Tf, double eps);

/// One vertex of J^m(n, r): m sorted r-subsets.
using WalkVertex = std::vector<std::vector<std::size_t>>;

struct WalkRecord {
  bool found = false;
  std::size_t setup_count = 0;
  std::size_t update_count = 0;
  std::size_t check_count = 0;
  std::optional<WalkVertex> marked_vertex;
};

using MarkedPredicate = std::function<bool(const WalkVertex&)>;

struct WalkOptions {
  std::size_t mix_steps = 0;        // 0: default_mix_steps(spec)
  std::size_t max_updates = 1u << 24;
  std::ostream* trace = nullptr;    // one JSON object per check round
};

/// ceil(ln|V| / delta), at least 1. delta is the exact absolute gap when
/// C(n,r)^m <= 4096 and positive, otherwise the formula bound.
std::size_t default_mix_steps(const JohnsonSpec& spec);

/// Classical random walk: sample a uniform vertex (setup), then alternate a
/// check with mix_steps uniform neighbour steps until a marked vertex is seen
/// or max_updates is spent (found = false).
WalkRecord classical_walk(const JohnsonSpec& spec, const MarkedPredicate& marked, std::uint64_t seed,
                          const WalkOptions& opt = {});

/// Marks a vertex when a seeded hash of its subsets falls below fraction * 2^64.
/// fraction >= 1 marks everything.
MarkedPredicate hashed_marking(double fraction, std::uint64_t salt);

/// Counters of the emulated walk data structure.
struct SsWalkStats {
  std::size_t match_limit = 0;
  std::size_t reinitializations = 0;
  std::size_t setup_ops = 0;                 // index operations over all setups
  std::size_t max_update_ops = 0;            // worst single update
  std::size_t max_update_comparisons = 0;
  std::size_t update_op_limit = 0;           // 6 + 2L(3 + L)
  std::size_t comparison_limit = 0;          // update_op_limit * (2 log2(L^2 U + 1) + L + 4)
  std::size_t limit_violations = 0;          // updates over a limit that did not re-initialize
};

struct SsWalkRecord {
  WalkRecord walk;
  std::optional<Quad> solution;
  SsWalkStats stats;
};

struct SsWalkOptions {
  std::size_t match_limit = 8;
  std::size_t budget = 1u << 20;  // maximum updates
};

/// Classical emulation of the walk on J^4(V, U) for a fixed merge value r
/// (r = (r1 << ell2) | r2 on pi12). Keeps 13 ordered indexes: the four
/// subsets, their pi12 images, left/right pair matches, their pi0 images and
/// the solution set. One update swaps a single element of one list; when a
/// lookup returns more than match_limit entries the structure is rebuilt
/// (counted as a setup). The solution set is checked after setup and after
/// every update. Throws ParameterError when U exceeds a list size or is 0.
SsWalkRecord emulate_ss_walk(const KSumInstance& inst, std::size_t U, MergeTarget r, std::uint64_t seed,
                             const SsWalkOptions& opt = {});

/// The r value (pi12 of the left pair sum) of a 4-sum tuple.
MergeTarget merge_target_of(const KSumInstance& inst, const Quad& q);

}  // namespace isdlab

#endif
