#include "casimir/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace casimir {

std::string format_sci(double v) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
  return std::string(buf, res.ptr);
}

std::string csv_row(double target_m, const CasimirResult& r) {
  std::string out;
  out += format_sci(target_m);
  out += ',';
  out += format_sci(r.energy);
  out += ',';
  out += format_sci(r.force_left);
  out += ',';
  out += format_sci(r.force_right);
  out += ',';
  out += format_sci(r.force_stack);
  out += ',';
  out += format_sci(r.est_error);
  return out;
}

std::string csv_error_row(double target_m, std::string_view message) {
  std::string out;
  out += format_sci(target_m);
  out += ",,,,,,";
  out += message;
  return out;
}

std::string render_table(const CasimirResult& r) {
  std::ostringstream os;
  auto line = [&os](const char* name, double value, const char* unit,
                    double vp, double vs) {
    os << "  " << name << " = " << format_sci(value) << " " << unit
       << "  (p: " << format_sci(vp) << ", s: " << format_sci(vs) << ")\n";
  };
  os << "Casimir results (SI)\n";
  line("E  ", r.energy, "J/m^2", r.p.energy, r.s.energy);
  line("F_L", r.force_left, "N/m^2", r.p.force_left, r.s.force_left);
  line("F_R", r.force_right, "N/m^2", r.p.force_right, r.s.force_right);
  line("F_S", r.force_stack, "N/m^2", r.p.force_stack, r.s.force_stack);
  os << "  sum |F_L+F_R+F_S| = "
     << format_sci(std::abs(r.force_left + r.force_right + r.force_stack))
     << " N/m^2\n";
  os << "  est_error (rel) = " << format_sci(r.est_error) << "\n";
  os << "  evaluations = " << r.evaluations << "\n";
  return os.str();
}

}  // namespace casimir
