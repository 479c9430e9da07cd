#include "labelguard/wfdb.hpp"

#include <fstream>

#include "labelguard/errors.hpp"

namespace labelguard {

namespace {

std::int32_t sign_extend_12(std::uint32_t v) {
  return (v & 0x800u) ? static_cast<std::int32_t>(v) - 4096
                      : static_cast<std::int32_t>(v);
}

}  // namespace

std::vector<std::vector<std::int32_t>> decode_wfdb_212(
    std::span<const std::uint8_t> bytes, std::size_t n_channels) {
  if (n_channels == 0) throw ArgumentError("decode_wfdb_212: zero channels");
  if (bytes.size() % 3 != 0)
    throw MalformedFileError(
        "format 212: byte length " + std::to_string(bytes.size()) +
        " is not a multiple of 3 (trailing partial frame)");
  const std::size_t n_samples = bytes.size() / 3 * 2;
  if (n_samples % n_channels != 0)
    throw ArgumentError("format 212: sample count " +
                        std::to_string(n_samples) + " not divisible by " +
                        std::to_string(n_channels) + " channels");

  std::vector<std::vector<std::int32_t>> channels(n_channels);
  const std::size_t per_channel = n_samples / n_channels;
  for (auto& ch : channels) ch.reserve(per_channel);

  std::size_t idx = 0;
  for (std::size_t i = 0; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t lo = bytes[i];
    const std::uint32_t mid = bytes[i + 1];
    const std::uint32_t hi = bytes[i + 2];
    const std::int32_t s1 = sign_extend_12(lo | ((mid & 0x0Fu) << 8));
    const std::int32_t s2 = sign_extend_12(hi | ((mid & 0xF0u) << 4));
    channels[idx % n_channels].push_back(s1);
    ++idx;
    channels[idx % n_channels].push_back(s2);
    ++idx;
  }
  return channels;
}

std::vector<std::uint8_t> encode_wfdb_212(
    const std::vector<std::vector<std::int32_t>>& channels) {
  if (channels.empty()) throw ArgumentError("encode_wfdb_212: no channels");
  const std::size_t per_channel = channels.front().size();
  for (const auto& ch : channels)
    if (ch.size() != per_channel)
      throw ArgumentError("encode_wfdb_212: channels differ in length");
  const std::size_t n_samples = per_channel * channels.size();
  if (n_samples % 2 != 0)
    throw ArgumentError("encode_wfdb_212: total sample count must be even");

  auto pack = [](std::int32_t s) -> std::uint32_t {
    if (s < -2048 || s > 2047)
      throw ArgumentError("encode_wfdb_212: sample " + std::to_string(s) +
                          " outside 12-bit signed range");
    return static_cast<std::uint32_t>(s) & 0xFFFu;
  };

  std::vector<std::uint8_t> bytes;
  bytes.reserve(n_samples / 2 * 3);
  for (std::size_t i = 0; i < n_samples; i += 2) {
    const std::uint32_t a = pack(channels[i % channels.size()][i / channels.size()]);
    const std::size_t j = i + 1;
    const std::uint32_t b = pack(channels[j % channels.size()][j / channels.size()]);
    bytes.push_back(static_cast<std::uint8_t>(a & 0xFFu));
    bytes.push_back(static_cast<std::uint8_t>(((a >> 8) & 0x0Fu) |
                                              (((b >> 8) & 0x0Fu) << 4)));
    bytes.push_back(static_cast<std::uint8_t>(b & 0xFFu));
  }
  return bytes;
}

std::vector<std::vector<std::int32_t>> read_wfdb_dat(
    const std::filesystem::path& path, std::size_t n_channels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_wfdb_212(bytes, n_channels);
}

}  // namespace labelguard
