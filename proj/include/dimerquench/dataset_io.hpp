#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "randomized_measurement.hpp"

namespace dimerquench {

/**
 * Binary layout, all integers little-endian:
 *
 *   "DQMD"  u32 version  u32 N  u32 N_U  u32 N_M  u64 seed  f64 t
 *   u8 has_params [i32 n  f64 J  f64 delta  u8 boundary]
 *   N_U * N basis bytes (0 = X, 1 = Y, 2 = Z)
 *   N_U * N_M outcomes, each ceil(N / 8) bytes with qubit q in bit q % 8 of byte q / 8
 */
inline constexpr std::uint32_t dataset_format_version = 1;

[[nodiscard]] std::vector<std::uint8_t> encode_dataset(const MeasurementDataset &dataset);

/// Throws std::invalid_argument on a malformed or truncated buffer.
[[nodiscard]] MeasurementDataset decode_dataset(const std::vector<std::uint8_t> &bytes);

void write_dataset(const std::filesystem::path &path, const MeasurementDataset &dataset);
[[nodiscard]] MeasurementDataset read_dataset(const std::filesystem::path &path);

/// Human-readable summary written next to a binary dataset.
[[nodiscard]] nlohmann::json dataset_sidecar(const MeasurementDataset &dataset);

} // namespace dimerquench
