#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "starburst/signal.hpp"

namespace starburst {

enum class SampleFormat { cf32le, ci16le };

std::string to_string(SampleFormat f);
SampleFormat sample_format_from_string(std::string_view s);

// JSON sidecar stored next to the payload at <path>.json.
struct IqFileHeader {
  double sample_rate_hz = 0.0;
  double center_frequency_hz = 0.0;
  std::string sample_format = "cf32le";
  std::uint64_t num_samples = 0;
  std::string description;
};

// Payload is interleaved (I, Q) little-endian pairs; ci16le components are
// scaled by 1/32768. The sidecar is mandatory; there is no format sniffing.
IqSignal read_iq(const std::filesystem::path& path);
IqFileHeader read_iq_header(const std::filesystem::path& path);

void write_iq(const IqSignal& sig, const std::filesystem::path& path,
              SampleFormat format = SampleFormat::cf32le, double center_frequency_hz = 0.0,
              std::string_view description = "");

// Numeric table with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Header row then data rows, comma separated, '\n' terminators, values at 17
// significant digits with a locale-independent decimal point.
void write_csv(const Table& table, const std::filesystem::path& path);

Table read_csv(const std::filesystem::path& path);

std::string format_double(double v);  // 17 significant digits

}  // namespace starburst
