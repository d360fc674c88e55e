#pragma once

#include <string>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir::checks {

enum class Status { pass, fail, skip };

struct CheckResult {
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

/// Fault-injection hooks used by the test harness to verify that the checks
/// can actually fail; production callers keep the defaults.
struct CheckOptions {
  double oracle_scale = 1.0;  ///< scales the analytic ideal-mirror reference
};

// Canned systems shared by the verification suite and the tests.

/// Idealized mirrors (rp, rs) = (1, -1) across a single vacuum layer.
SystemConfig ideal_mirror_vacuum(double gap);

/// Dielectric plate | vacuum | dense slab | vacuum | lossy mirror, with
/// unequal gap thicknesses.
SystemConfig asymmetric_three_layer();

/// Five-layer medium with no mirror symmetry; first and last layers vacuum.
SystemConfig asymmetric_five_layer();

/// Same plates (eps = 2.25 half-spaces) across one vacuum layer and across
/// the same total gap split into four vacuum layers.
std::pair<SystemConfig, SystemConfig> lifshitz_reduction_pair();

/// Single-interface a-invariant equals 1 within 1e-14 on sampled media.
CheckResult a_identity(const SystemConfig& sys);

/// Stack-reversal symmetry of the a-invariant within rel 1e-12.
CheckResult a_symmetry(const SystemConfig& sys);

/// n_denominator * D_l == effective_denominator within rel 1e-12 for every
/// intermediate layer of the system (and of a canned 5-layer system).
CheckResult factorization(const SystemConfig& sys);

/// F_L == dE/d(d1) and F_R == -dE/d(dn) by central differences, rel 1e-5.
/// Skipped unless spec.rel_tol <= 1e-7: the finite-difference target cannot
/// be resolved through looser quadrature noise.
CheckResult force_energy_fd(const SystemConfig& sys,
                            const QuadratureSpec& spec);

/// F_S + F_L + F_R == 0 within 1e-10 of max(|F_L|, |F_R|).
CheckResult sum_rule(const SystemConfig& sys, const QuadratureSpec& spec);

/// E(mirrored) == E within rel 1e-10; F_L(mirrored) == -F_R within rel 1e-9.
CheckResult mirror_identity(const SystemConfig& sys,
                            const QuadratureSpec& spec);

/// Four vacuum layers reproduce the single-layer result within rel 1e-9.
CheckResult lifshitz_reduction(const QuadratureSpec& spec);

/// Ideal-mirror energy and force match the analytic references within
/// rel 1e-3. oracle_scale != 1 deliberately miscalibrates the reference.
CheckResult ideal_casimir_oracle(const QuadratureSpec& spec,
                                 double oracle_scale = 1.0);

/// All checks in release-gate order.
std::vector<CheckResult> run_all(const SystemConfig& sys,
                                 const QuadratureSpec& spec,
                                 const CheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace casimir::checks
