#pragma once

#include <span>
#include <string>
#include <vector>

#include "nch/diagnostics.hpp"
#include "nch/mesh.hpp"
#include "nch/scheme.hpp"

namespace nch {

inline constexpr const char* kCsvHeader =
    "step,time,mass,energy,entropy,production,energy_increment,theta_min,theta_max,"
    "newton_iterations,final_residual";

/// Decimal rendering with 17 significant digits (%.17g style).
std::string format_double(double v);

std::string records_to_csv(std::span<const DiagnosticsRecord> records);
void write_csv(std::span<const DiagnosticsRecord> records, const std::string& path);
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

/// Legacy VTK (ASCII 2.0) unstructured grid with point fields phi, mu,
/// theta. Cells use representative node indices, so triangles crossing the
/// periodic seam render folded across the domain.
void write_vtk_snapshot(const Mesh& mesh, const State& state, const std::string& path);

}  // namespace nch
