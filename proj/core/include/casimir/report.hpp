#pragma once

#include <string>
#include <string_view>

#include "casimir/quadrature.hpp"

namespace casimir {

/// Locale-independent scientific notation with 9 significant digits,
/// e.g. "1.30012577e-03". Stable under format -> parse -> format.
std::string format_sci(double v);

/// Exact CSV header of compute/sweep output.
inline constexpr std::string_view csv_header =
    "target_m,E_Jm2,FL_Nm2,FR_Nm2,FS_Nm2,err_rel";

/// One CSV data row for a completed evaluation.
std::string csv_row(double target_m, const CasimirResult& r);

/// Row for a failed sweep point: target, empty value fields, and the error
/// message appended as a trailing column.
std::string csv_error_row(double target_m, std::string_view message);

/// Human-readable block with units, polarization breakdown, error estimate
/// and evaluation count.
std::string render_table(const CasimirResult& r);

}  // namespace casimir
