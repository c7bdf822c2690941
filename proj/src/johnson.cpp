#include <isdlab/johnson.hpp>
#include <isdlab/bits.hpp>
#include <isdlab/combinatorics.hpp>
#include <isdlab/rng.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace isdlab {

void JohnsonSpec::validate() const {
  if (r == 0 || r >= n) throw ParameterError("JohnsonSpec: need 0 < r < n");
  if (m == 0) throw ParameterError("JohnsonSpec: need m >= 1");
}

double JohnsonSpec::vertex_count() const {
  return std::pow(binomial_real(static_cast<long long>(n), static_cast<long long>(r)), static_cast<double>(m));
}

RegularGraph johnson_graph(std::size_t n, std::size_t r) {
  JohnsonSpec{n, r, 1}.validate();
  const auto subsets = all_subsets(n, r);
  RegularGraph g;
  g.degree = r * (n - r);
  g.adj.resize(subsets.size());
  std::vector<std::size_t> next(r);
  std::vector<char> member(n);
  for (std::size_t v = 0; v < subsets.size(); ++v) {
    const auto& s = subsets[v];
    std::fill(member.begin(), member.end(), 0);
    for (std::size_t x : s) member[x] = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t y = 0; y < n; ++y) {
        if (member[y]) continue;
        next = s;
        next[i] = y;
        std::sort(next.begin(), next.end());
        g.adj[v].push_back(static_cast<std::uint32_t>(subset_rank(next, n)));
      }
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }
  return g;
}

RegularGraph cartesian_product(const RegularGraph& a, const RegularGraph& b) {
  const std::size_t na = a.size(), nb = b.size();
  if (static_cast<double>(na) * static_cast<double>(nb) > 4294967295.0) throw TooLarge("cartesian_product: too many vertices");
  RegularGraph g;
  g.degree = a.degree + b.degree;
  g.adj.resize(na * nb);
  // vertex (i, j) -> i + na * j
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) {
      auto& nbrs = g.adj[i + na * j];
      nbrs.reserve(g.degree);
      for (std::uint32_t x : a.adj[i]) nbrs.push_back(static_cast<std::uint32_t>(x + na * j));
      for (std::uint32_t y : b.adj[j]) nbrs.push_back(static_cast<std::uint32_t>(i + na * y));
      std::sort(nbrs.begin(), nbrs.end());
    }
  return g;
}

RegularGraph johnson_power(const JohnsonSpec& spec) {
  spec.validate();
  if (spec.vertex_count() > 1 << 20) throw TooLarge("johnson_power: more than 2^20 vertices");
  const RegularGraph base = johnson_graph(spec.n, spec.r);
  RegularGraph g = base;
  for (std::size_t i = 1; i < spec.m; ++i) g = cartesian_product(g, base);
  return g;
}

std::vector<double> transition_spectrum(const RegularGraph& g) {
  const auto N = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  const double inv = 1.0 / static_cast<double>(g.degree);
  for (Eigen::Index v = 0; v < N; ++v)
    for (std::uint32_t u : g.adj[static_cast<std::size_t>(v)]) M(v, u) += inv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + N);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SpectralGap gap_from_spectrum(const std::vector<double>& desc) {
  if (desc.size() < 2) throw ParameterError("gap_from_spectrum: need at least two eigenvalues");
  SpectralGap g;
  g.one_sided = 1.0 - desc[1];
  g.absolute = 1.0 - std::max(std::abs(desc[1]), std::abs(desc.back()));
  return g;
}

double johnson_gap_formula(const JohnsonSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n), r = static_cast<double>(spec.r);
  return n / (r * (n - r)) / static_cast<double>(spec.m);
}

namespace {

// Transition operator of J(n, r) applied matrix-free through the
// (r-1)-subset incidence D:  A = Dᵀ D - r I. J(n, r) and J(n, n-r) are
// isomorphic (complementation), so the smaller of r, n-r is used.
class JohnsonOperator {
public:
  JohnsonOperator(std::size_t n, std::size_t r) : r_(std::min(r, n - r)), degree_(r * (n - r)) {
    const auto subsets = all_subsets(n, r_);
    size_ = subsets.size();
    lower_ = static_cast<std::size_t>(binomial(n, r_ - 1));
    down_.resize(size_ * r_);
    std::vector<std::size_t> t(r_ - 1);
    for (std::size_t v = 0; v < size_; ++v)
      for (std::size_t i = 0; i < r_; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < r_; ++j)
          if (j != i) t[k++] = subsets[v][j];
        down_[v * r_ + i] = static_cast<std::uint32_t>(subset_rank(t, n));
      }
    scratch_.resize(lower_);
  }

  std::size_t size() const noexcept { return size_; }

  // y[v] += scale * (A x / d)[v] for fiber entries at base + i*stride
  void apply_fiber(const std::vector<double>& x, std::vector<double>& y, std::size_t base, std::size_t stride,
                   double scale) {
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    for (std::size_t v = 0; v < size_; ++v) {
      const double xv = x[base + v * stride];
      for (std::size_t i = 0; i < r_; ++i) scratch_[down_[v * r_ + i]] += xv;
    }
    const double c = scale / static_cast<double>(degree_);
    for (std::size_t v = 0; v < size_; ++v) {
      double acc = -static_cast<double>(r_) * x[base + v * stride];
      for (std::size_t i = 0; i < r_; ++i) acc += scratch_[down_[v * r_ + i]];
      y[base + v * stride] += c * acc;
    }
  }

private:
  std::size_t r_, degree_, size_ = 0, lower_ = 0;
  std::vector<std::uint32_t> down_;
  std::vector<double> scratch_;
};

}  // namespace

SpectralGap exact_spectral_gap(const JohnsonSpec& spec) {
  spec.validate();
  const double N = spec.vertex_count();
  if (N > 4096) throw TooLarge("exact_spectral_gap: C(n,r)^m > 4096");
  if (N <= 1024) return gap_from_spectrum(transition_spectrum(johnson_power(spec)));
  return spectral_gap_lanczos(spec, 4096);
}

SpectralGap spectral_gap_lanczos(const JohnsonSpec& spec, std::size_t max_vertices) {
  spec.validate();
  const double Nd = spec.vertex_count();
  if (Nd > static_cast<double>(max_vertices)) throw TooLarge("spectral_gap_lanczos: too many vertices");
  JohnsonOperator op(spec.n, spec.r);
  const std::size_t base_size = op.size();
  const auto N = static_cast<std::size_t>(std::llround(Nd));
  const double inv_m = 1.0 / static_cast<double>(spec.m);

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < spec.m; ++axis) {
      const std::size_t block = stride * base_size;
      for (std::size_t outer = 0; outer < N; outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) op.apply_fiber(x, y, outer + inner, stride, inv_m);
      stride = block;
    }
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  auto deflate = [N](std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(N);
    for (double& x : v) x -= mean;
  };

  Rng rng(0x1a2b3c4dULL + N);
  std::vector<double> q(N);
  for (double& x : q) x = rng.uniform() - 0.5;
  deflate(q);
  const double q_norm = std::sqrt(dot(q, q));
  for (double& x : q) x /= q_norm;

  const std::size_t max_iter = std::min<std::size_t>(N - 1, 300);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(N);
  basis.push_back(q);
  for (std::size_t j = 0; j < max_iter; ++j) {
    apply(basis[j], w);
    const double a = dot(basis[j], w);
    alpha.push_back(a);
    // two passes of full reorthogonalization
    for (int pass = 0; pass < 2; ++pass) {
      deflate(w);
      for (const auto& b : basis) {
        const double c = dot(b, w);
        for (std::size_t i = 0; i < N; ++i) w[i] -= c * b[i];
      }
    }
    const double b = std::sqrt(dot(w, w));
    if (b < 1e-10 || j + 1 == max_iter) break;
    beta.push_back(b);
    for (double& x : w) x /= b;
    basis.push_back(w);
  }

  const auto k = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag(k), sub(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i < k; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  double lmax, lmin;
  if (k == 1) {
    lmax = lmin = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    lmin = es.eigenvalues()(0);
    lmax = es.eigenvalues()(k - 1);
  }
  SpectralGap g;
  g.one_sided = 1.0 - lmax;
  g.absolute = 1.0 - std::max(std::abs(lmax), std::abs(lmin));
  return g;
}

double product_gap_bound(std::size_t d1, double delta1, std::size_t d2, double delta2) {
  if (d1 == 0 || d2 == 0) throw ParameterError("product_gap_bound: degrees must be >= 1");
  if (delta1 < 0 || delta1 > 1 || delta2 < 0 || delta2 > 1) throw ParameterError("product_gap_bound: gaps must lie in [0, 1]");
  const double a = delta1 * static_cast<double>(d1), b = delta2 * static_cast<double>(d2);
  return std::min(a, b) / static_cast<double>(d1 + d2);
}

std::vector<double> product_spectrum_formula(const std::vector<double>& spec1, std::size_t d1,
                                             const std::vector<double>& spec2, std::size_t d2) {
  std::vector<double> out;
  out.reserve(spec1.size() * spec2.size());
  const double s = static_cast<double>(d1 + d2);
  for (double a : spec1)
    for (double b : spec2) out.push_back((static_cast<double>(d1) * a + static_cast<double>(d2) * b) / s);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace isdlab
