#ifndef ISDLAB_JOHNSON_HPP
#define ISDLAB_JOHNSON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace isdlab {

/// J^m(n, r): m-fold cartesian power of the Johnson graph on r-subsets of an n-set.
struct JohnsonSpec {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t m = 1;

  /// Throws ParameterError unless 0 < r < n and m >= 1.
  void validate() const;
  std::size_t degree() const noexcept { return m * r * (n - r); }
  /// C(n, r)^m as a double (may exceed any integer type).
  double vertex_count() const;
};

class TooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Undirected regular graph as adjacency lists.
struct RegularGraph {
  std::size_t degree = 0;
  std::vector<std::vector<std::uint32_t>> adj;

  std::size_t size() const noexcept { return adj.size(); }
};

RegularGraph johnson_graph(std::size_t n, std::size_t r);
RegularGraph cartesian_product(const RegularGraph& a, const RegularGraph& b);
/// Explicit J^m(n, r); vertex index is sum_j rank_j * C(n,r)^j.
RegularGraph johnson_power(const JohnsonSpec& spec);

/// Eigenvalues of the transition matrix A/d, descending (dense eigensolve).
std::vector<double> transition_spectrum(const RegularGraph& g);

struct SpectralGap {
  double one_sided = 0;  // 1 - lambda_2
  double absolute = 0;   // 1 - max_{i>=2} |lambda_i|
};

/// Gaps from a descending spectrum whose first entry is the trivial eigenvalue 1.
SpectralGap gap_from_spectrum(const std::vector<double>& descending);

/// n / (r (n - r)) for m = 1, and that value divided by m (a lower bound) for m > 1.
double johnson_gap_formula(const JohnsonSpec& spec);

/// Exact gaps of J^m(n, r). Requires C(n,r)^m <= 4096 (throws TooLarge).
/// Graphs with at most 1024 vertices use a dense eigensolve; larger ones use
/// spectral_gap_lanczos.
SpectralGap exact_spectral_gap(const JohnsonSpec& spec);

/// Extreme nontrivial eigenvalues by Lanczos with full reorthogonalization on
/// the matrix-free operator (constant vector deflated). The operators here
/// have few distinct eigenvalues, so the iteration normally terminates
/// exactly. Throws TooLarge above max_vertices.
SpectralGap spectral_gap_lanczos(const JohnsonSpec& spec, std::size_t max_vertices = std::size_t(1) << 20);

/// min(delta1*d1, delta2*d2) / (d1 + d2).
double product_gap_bound(std::size_t d1, double delta1, std::size_t d2, double delta2);

/// Multiset {(d1*a + d2*b)/(d1+d2)} over both spectra, descending.
std::vector<double> product_spectrum_formula(const std::vector<double>& spec1, std::size_t d1,
                                             const std::vector<double>& spec2, std::size_t d2);

}  // namespace isdlab

#endif
