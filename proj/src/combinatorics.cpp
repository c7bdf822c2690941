#include <isdlab/combinatorics.hpp>

#include <cmath>

namespace isdlab {

__extension__ using u128 = unsigned __int128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > ~std::uint64_t(0)) throw ParameterError("binomial: overflow");
  }
  return static_cast<std::uint64_t>(r);
}

double binomial_real(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 60) return static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
  return std::round(std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1)));
}

namespace {

template <typename Visit>
void for_each_combination(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    visit(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<BitVector> weight_vectors(std::size_t len, std::size_t offset, std::size_t span, std::size_t weight) {
  if (offset + span > len) throw ParameterError("weight_vectors: span exceeds length");
  std::vector<BitVector> out;
  for_each_combination(span, weight, [&](const std::vector<std::size_t>& c) {
    BitVector v(len);
    for (std::size_t i : c) v.set(offset + i);
    out.push_back(std::move(v));
  });
  return out;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(n, r, [&](const std::vector<std::size_t>& c) { out.push_back(c); });
  return out;
}

std::uint64_t subset_rank(std::span<const std::size_t> subset, std::size_t n) {
  // Count subsets lexicographically smaller: at slot i, every value v between
  // the previous element + 1 and subset[i] - 1 contributes C(n - v - 1, r - i - 1).
  const std::size_t r = subset.size();
  std::uint64_t rank = 0;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t v = (i == 0 ? 0 : prev + 1); v < subset[i]; ++v) rank += binomial(n - v - 1, r - i - 1);
    prev = subset[i];
  }
  return rank;
}

}  // namespace isdlab
