#ifndef ISDLAB_COMBINATORICS_HPP
#define ISDLAB_COMBINATORICS_HPP

#include <isdlab/bits.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isdlab {

/// Exact C(n, k); 0 when k > n. Throws ParameterError on uint64 overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) in floating point; 0 when k < 0, n < 0 or k > n.
double binomial_real(long long n, long long k);

/// All weight-`weight` vectors of length `len` supported on [offset, offset+span),
/// in lexicographic order of their sorted supports.
std::vector<BitVector> weight_vectors(std::size_t len, std::size_t offset, std::size_t span, std::size_t weight);

/// Sorted r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t r);

/// Lexicographic rank of a sorted r-subset of {0..n-1} (inverse of all_subsets order).
std::uint64_t subset_rank(std::span<const std::size_t> subset, std::size_t n);

}  // namespace isdlab

#endif
