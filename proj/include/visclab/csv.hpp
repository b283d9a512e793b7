#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "visclab/entropy.hpp"
#include "visclab/estimates.hpp"
#include "visclab/grid.hpp"
#include "visclab/solver_galerkin.hpp"

namespace visclab::io {

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Snapshot CSV with header `x,u`.
void write_snapshot(const std::filesystem::path& file, const Grid& grid, const GridFunction& u);
GridFunction read_snapshot(const std::filesystem::path& file, std::vector<double>* xs = nullptr);

// Trajectory: one snapshot file per recorded state plus a manifest
// `step,time,file` (optionally with a provenance column).
void write_trajectory(const std::filesystem::path& dir, const std::string& stem,
                      const Trajectory& traj, const std::string& provenance = "");
Trajectory read_trajectory(const std::filesystem::path& manifest);

void write_verdicts(const std::filesystem::path& file, const std::vector<EstimateVerdict>& vs);

void write_diagnostics(const std::filesystem::path& file, const DiagnosticsSeries& diag);

void write_entropy_report(const std::filesystem::path& file,
                          const std::vector<EntropyProbe>& probes,
                          const std::vector<double>& residuals);

void write_trace(const std::filesystem::path& file, const BoundaryTrace& trace);

void write_coefficient_history(const std::filesystem::path& file, const GalerkinTrajectory& gt);

// Self-contained log-log SVG scatter with a fitted line.
void write_loglog_svg(const std::filesystem::path& file, const std::vector<double>& xs,
                      const std::vector<double>& ys, double slope, double intercept,
                      const std::string& xlabel, const std::string& ylabel);

}  // namespace visclab::io
