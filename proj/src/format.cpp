#include <isdlab/format.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace isdlab {

const char* const curve_csv_header =
    "R,omega,alpha_prange,alpha_bernstein,alpha_ssqw,alpha_mmtqw,lambda_ss,pi_ss,lambda_mmt,pi_mmt,dpi_mmt";

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string format_cell(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

double round9(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

std::string curve_csv_row(const SweepRow& r) {
  std::string s = format_real(r.R) + ',' + format_real(r.omega);
  for (const auto* c : {&r.alpha_prange, &r.alpha_bernstein, &r.alpha_ssqw, &r.alpha_mmtqw, &r.lambda_ss, &r.pi_ss,
                        &r.lambda_mmt, &r.pi_mmt, &r.dpi_mmt})
    s += ',' + format_cell(*c);
  return s;
}

void write_curve_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << curve_csv_header << '\n';
  for (const auto& r : rows) os << curve_csv_row(r) << '\n';
}

}  // namespace isdlab
