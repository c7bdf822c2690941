#include <isdlab/optimize.hpp>
#include <isdlab/bits.hpp>

#include <cmath>
#include <limits>

namespace isdlab {

namespace {
constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

Min1D golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) throw ParameterError("golden_section_min: need a < b");
  if (!(tol > 0)) throw ParameterError("golden_section_min: need tol > 0");
  Min1D best{a, inf};
  auto eval = [&](double x) {
    const double v = f(x);
    if (v < best.fx) best = {x, v};
    return v;
  };
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  eval(0.5 * (a + b));
  return best;
}

Min1D golden_section_multistart(const std::function<double(double)>& f, double a, double b, double tol,
                                std::size_t cells) {
  if (cells == 0) throw ParameterError("golden_section_multistart: need cells >= 1");
  if (!(a < b)) throw ParameterError("golden_section_multistart: need a < b");
  const double h = (b - a) / static_cast<double>(cells);
  Min1D best{a, inf};
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = i + 1 == cells ? b : lo + h;
    const Min1D m = golden_section_min(f, lo, hi, tol);
    if (m.fx < best.fx) best = m;
  }
  return best;
}

Min2D nested_golden_min(const std::function<double(double, double)>& f, const Box& box, double tol,
                        std::size_t cells) {
  return nested_golden_min(f, box.x0, box.x1, [&box](double) { return std::pair{box.y0, box.y1}; }, tol, cells);
}

Min2D nested_golden_min(const std::function<double(double, double)>& f, double x0, double x1,
                        const std::function<std::pair<double, double>(double)>& y_range, double tol,
                        std::size_t cells) {
  Min2D best{x0, 0, inf};
  auto inner = [&](double x) {
    auto [lo, hi] = y_range(x);
    if (!(lo <= hi)) return inf;
    Min1D m;
    if (hi - lo <= tol) {
      m = {lo, f(x, lo)};
      const double v = f(x, hi);
      if (v < m.fx) m = {hi, v};
    } else {
      m = golden_section_multistart([&](double y) { return f(x, y); }, lo, hi, tol, cells);
    }
    if (m.fx < best.fxy) best = {x, m.x, m.fx};
    return m.fx;
  };
  golden_section_multistart(inner, x0, x1, tol, cells);
  return best;
}

}  // namespace isdlab
