#include "starburst/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace starburst {

static_assert(std::endian::native == std::endian::little,
              "IQ payloads are little-endian; big-endian hosts are not supported");

std::string to_string(SampleFormat f) {
  switch (f) {
    case SampleFormat::cf32le: return "cf32le";
    case SampleFormat::ci16le: return "ci16le";
  }
  throw std::logic_error("unknown sample format");
}

SampleFormat sample_format_from_string(std::string_view s) {
  if (s == "cf32le") return SampleFormat::cf32le;
  if (s == "ci16le") return SampleFormat::ci16le;
  throw std::invalid_argument("unknown sample format: " + std::string(s));
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

std::size_t bytes_per_sample(SampleFormat f) {
  return f == SampleFormat::cf32le ? 8 : 4;
}

std::int16_t quantize(double v) {
  const double scaled = std::lround(v * 32768.0);
  if (scaled > 32767.0) return 32767;
  if (scaled < -32768.0) return -32768;
  return static_cast<std::int16_t>(scaled);
}

}  // namespace

IqFileHeader read_iq_header(const std::filesystem::path& path) {
  std::ifstream in(sidecar_path(path));
  if (!in) throw std::runtime_error("unreadable sidecar: " + sidecar_path(path).string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed sidecar " + sidecar_path(path).string() + ": " + e.what());
  }
  IqFileHeader h;
  h.sample_rate_hz = j.at("sample_rate_hz").get<double>();
  h.center_frequency_hz = j.value("center_frequency_hz", 0.0);
  h.sample_format = j.at("sample_format").get<std::string>();
  h.num_samples = j.at("num_samples").get<std::uint64_t>();
  h.description = j.value("description", "");
  if (!(h.sample_rate_hz > 0.0)) throw std::runtime_error("sidecar: sample_rate_hz must be positive");
  return h;
}

IqSignal read_iq(const std::filesystem::path& path) {
  const IqFileHeader h = read_iq_header(path);
  const SampleFormat fmt = sample_format_from_string(h.sample_format);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("unreadable IQ payload: " + path.string());
  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0);

  const std::uint64_t expected = h.num_samples * bytes_per_sample(fmt);
  if (file_size != expected) {
    std::ostringstream msg;
    msg << "IQ payload length mismatch for " << path.string() << ": sidecar promises " << expected
        << " bytes (" << h.num_samples << " samples), file has " << file_size;
    throw std::runtime_error(msg.str());
  }

  IqSignal sig;
  sig.sample_rate = h.sample_rate_hz;
  sig.samples.resize(h.num_samples);

  if (fmt == SampleFormat::cf32le) {
    std::vector<float> raw(2 * h.num_samples);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(expected));
    for (std::uint64_t i = 0; i < h.num_samples; ++i) {
      sig.samples[i] = cplx{static_cast<double>(raw[2 * i]), static_cast<double>(raw[2 * i + 1])};
    }
  } else {
    std::vector<std::int16_t> raw(2 * h.num_samples);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(expected));
    constexpr double scale = 1.0 / 32768.0;
    for (std::uint64_t i = 0; i < h.num_samples; ++i) {
      sig.samples[i] = cplx{raw[2 * i] * scale, raw[2 * i + 1] * scale};
    }
  }
  if (!in) throw std::runtime_error("short read on IQ payload: " + path.string());
  return sig;
}

void write_iq(const IqSignal& sig, const std::filesystem::path& path, SampleFormat format,
              double center_frequency_hz, std::string_view description) {
  if (!(sig.sample_rate > 0.0)) throw std::invalid_argument("write_iq: sample rate must be positive");

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    if (format == SampleFormat::cf32le) {
      std::vector<float> raw(2 * sig.size());
      for (std::size_t i = 0; i < sig.size(); ++i) {
        raw[2 * i] = static_cast<float>(sig.samples[i].real());
        raw[2 * i + 1] = static_cast<float>(sig.samples[i].imag());
      }
      out.write(reinterpret_cast<const char*>(raw.data()),
                static_cast<std::streamsize>(raw.size() * sizeof(float)));
    } else {
      std::vector<std::int16_t> raw(2 * sig.size());
      for (std::size_t i = 0; i < sig.size(); ++i) {
        raw[2 * i] = quantize(sig.samples[i].real());
        raw[2 * i + 1] = quantize(sig.samples[i].imag());
      }
      out.write(reinterpret_cast<const char*>(raw.data()),
                static_cast<std::streamsize>(raw.size() * sizeof(std::int16_t)));
    }
    if (!out) throw std::runtime_error("short write on IQ payload: " + path.string());
  }

  nlohmann::ordered_json j;
  j["sample_rate_hz"] = sig.sample_rate;
  j["center_frequency_hz"] = center_frequency_hz;
  j["sample_format"] = to_string(format);
  j["num_samples"] = static_cast<std::uint64_t>(sig.size());
  j["description"] = std::string(description);
  std::ofstream side(sidecar_path(path), std::ios::trunc);
  if (!side) throw std::runtime_error("cannot open sidecar for writing: " + sidecar_path(path).string());
  side << j.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("write_csv: row width differs from the header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("short write: " + path.string());
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("unreadable CSV: " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV without a header row: " + path.string());
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw std::runtime_error("CSV cell is not a number: '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("CSV row width differs from the header: " + path.string());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace starburst
