#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/kernel.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class TaskKind { compute, sweep, check };
enum class OutputFormat { table, csv };

/// One-dimensional thickness sweep over a single medium layer.
struct SweepSpec {
  std::string target;           ///< "d1", "dn", or a 1-based layer index
  std::size_t layer_index = 1;  ///< resolved 1-based index into the medium
  std::vector<double> values;   ///< meters; positive, strictly increasing
};

struct OutputSpec {
  std::string path;  ///< empty writes to stdout
  OutputFormat format = OutputFormat::table;
};

/// Fully validated run description loaded from a config file.
struct RunConfig {
  SystemConfig system;
  QuadratureSpec quadrature;
  TaskKind task = TaskKind::compute;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
};

/// Load and validate a config file.
///
/// The format is a flat structured-text document:
///
///   [plate.left]            # kind = "mirror" (rp, rs) or
///   kind = "mirror"         # kind = "halfspace" (substrate = {...})
///   rp = 1.0
///   rs = -1.0
///
///   [[plate.left.coating]]  # optional coating layers, gap side first
///   d = 5.0e-9
///   type = "constant"
///   eps_inf = 2.25
///
///   [[layer]]               # medium layers, left to right; at least one
///   d = 1.0e-6
///   type = "vacuum"
///
///   [plate.right]
///   kind = "halfspace"
///   substrate = { type = "oscillator", terms = [{ wp2 = 1.0e32, w0 = 0.0,
///                                                 gamma = 1.0e13 }] }
///
///   [quadrature]            # optional overrides
///   rel_tol = 1.0e-9
///
///   [task]                  # optional; kind, target, values, out, format
///   kind = "compute"
///
/// Thicknesses are meters, frequencies rad/s; there is no unit-suffix
/// parsing. Malformed text raises ParseError; schema violations raise
/// ValidationError with "file:line:" references.
RunConfig load_config(const std::string& path);

/// Same as load_config on in-memory text; source_name seeds error messages.
RunConfig parse_config(std::string_view text, const std::string& source_name);

}  // namespace casimir
