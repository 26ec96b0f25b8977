#pragma once

#include <filesystem>
#include <string>

#include "cfluid/dynamics.hpp"
#include "cfluid/fields.hpp"
#include "cfluid/potential.hpp"

namespace cfluid {
namespace io {

/// Writes content to path via a temporary file and an atomic rename.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Snapshot serialization: CSV columns x,R,Theta plus a JSON side-car header
/// {n, L, t}.
void save_snapshot(const std::filesystem::path& csv_path,
                   const FieldPair& state);
FieldPair load_snapshot(const std::filesystem::path& csv_path);

/// Trajectory persists as a directory of CSV slices plus manifest.json
/// (grid, potential, dt, stride, times).
void save_trajectory(const std::filesystem::path& dir, const FieldMap2D& traj,
                     const Potential& pot, double dt, std::size_t stride);
FieldMap2D load_trajectory(const std::filesystem::path& dir,
                           Potential* pot_out = nullptr);

std::string potential_kind_name(const Potential& pot);
Potential potential_from_manifest(const std::string& kind, double c,
                                  double omega);

}  // namespace io
}  // namespace cfluid
