#ifndef ISDLAB_FORMAT_HPP
#define ISDLAB_FORMAT_HPP

#include <isdlab/exponents.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isdlab {

/// printf("%.9g") in the C locale; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double x);
/// Empty for nullopt.
std::string format_cell(const std::optional<double>& x);
/// x rounded to 9 significant digits (what format_real prints, parsed back).
double round9(double x);

extern const char* const curve_csv_header;
std::string curve_csv_row(const SweepRow& row);
void write_curve_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace isdlab

#endif
