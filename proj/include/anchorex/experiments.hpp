#pragma once

#include <memory>
#include <string>

#include "anchorex/basis.hpp"
#include "anchorex/io.hpp"
#include "anchorex/region.hpp"

namespace anchorex {

// Region from {"kind": ..., "bounds": ..., "resolution": ...}.
Region parse_region(const Json& spec);

// Basis from {"family": "legendre"|"chebyshev"|"spherical_harmonics"|"sine2d", ...}.
std::unique_ptr<BasisFamily> parse_basis(const Json& spec);

// Each runner fills config defaults, echoes the completed config into the
// report, and (when out_dir is non-empty) drops plot-data CSVs there. The
// returned report is deterministic for a fixed config+seed.
Json run_oscillator(Json config, const std::string& out_dir = "");
Json run_legendre20(Json config, const std::string& out_dir = "");
Json run_geomag(Json config, const std::string& out_dir = "");
Json run_bound_sweep(Json config, const std::string& out_dir = "");
Json run_beta_coverage(Json config, const std::string& out_dir = "");
Json run_sphere_harmonics(Json config, const std::string& out_dir = "");
Json run_poisson2d(Json config, const std::string& out_dir = "");

// Dispatch by name; writes report.json plus a runtime.txt sidecar (wall time
// stays out of the report so its bytes depend only on config+seed).
Json run_experiment(const std::string& name, Json config,
                    const std::string& out_dir = "");

}  // namespace anchorex
