#pragma once

#include <cstdint>
#include <string>

#include "ris/grid.hpp"
#include "ris/scene.hpp"

namespace ris {

/// Shortest round-trip decimal form of a double (bit-stable across runs).
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// One row per grid point in grid-index order; unit-suffixed headers.
/// Cuts get a leading angle_deg column and a dB magnitude column.
std::string scan_csv(const ScanResult& result);

std::string compare_csv(const ObservationGrid& grid, const CompareResult& cmp);

std::string spreading_csv(const SpreadingResult& sw);

void write_text_file(const std::string& path, const std::string& body);

} // namespace ris
