#ifndef ISDLAB_OPTIMIZE_HPP
#define ISDLAB_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <utility>

namespace isdlab {

struct Min1D {
  double x = 0;
  double fx = 0;
};

struct Min2D {
  double x = 0;
  double y = 0;
  double fxy = 0;
};

/// Golden-section search on [a, b] until the bracket is shorter than tol.
/// Returns the best point evaluated (so +inf regions are tolerated).
/// Throws ParameterError unless a < b and tol > 0.
Min1D golden_section_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-7);

/// Splits [a, b] into `cells` equal cells, runs golden_section_min in each
/// and keeps the best result (ties go to the leftmost cell).
Min1D golden_section_multistart(const std::function<double(double)>& f, double a, double b, double tol = 1e-7,
                                std::size_t cells = 8);

struct Box {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
};

/// Outer golden-section over x of an inner golden-section over y, both multi-start.
Min2D nested_golden_min(const std::function<double(double, double)>& f, const Box& box, double tol = 1e-7,
                        std::size_t cells = 1);

/// As above with an x-dependent inner interval; an empty interval (lo > hi)
/// makes the inner value +inf.
Min2D nested_golden_min(const std::function<double(double, double)>& f, double x0, double x1,
                        const std::function<std::pair<double, double>(double)>& y_range, double tol = 1e-7,
                        std::size_t cells = 1);

}  // namespace isdlab

#endif
