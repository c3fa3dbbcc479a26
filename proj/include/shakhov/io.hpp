#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "shakhov/solver.hpp"

namespace shakhov {

/// CSV header: the DiagnosticsRecord fields in declaration order.
std::string csv_header();
/// One record, every value with 17 significant digits.
std::string csv_row(const DiagnosticsRecord& record);

void write_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
void write_csv(const std::string& path, std::span<const DiagnosticsRecord> records);

/**
 * Checkpoint layout, version 1 (host byte order, little-endian in practice):
 *   char[8]   magic "SHKCKPT\0"
 *   uint32    version = 1
 *   uint64    length of the config text, then the bytes of render_config()
 *   float64   t
 *   uint64    n_cells
 *   uint64    n_nodes
 *   uint8     kind (0 absolute, 1 perturbation)
 *   float64[] values, n_cells * n_nodes, cell-major
 */
struct Checkpoint {
  std::string config_text;
  double t = 0.0;
  DistributionField field;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const std::string& path, const SimConfig& config, double t,
                      const DistributionField& field);
Checkpoint read_checkpoint(const std::string& path);  // throws std::runtime_error

}  // namespace shakhov
