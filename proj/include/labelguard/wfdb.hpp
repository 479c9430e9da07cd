#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace labelguard {

/// Decodes a WFDB format-212 byte stream. Every 3-byte frame packs two
/// 12-bit two's-complement samples:
///   s1 = low byte | ((mid byte & 0x0F) << 8)
///   s2 = high byte | ((mid byte & 0xF0) << 4)
/// Samples are interleaved across channels in channel order. Throws
/// MalformedFileError when the length is not a multiple of 3 and
/// ArgumentError when n_channels does not divide the sample count.
std::vector<std::vector<std::int32_t>> decode_wfdb_212(
    std::span<const std::uint8_t> bytes, std::size_t n_channels);

/// Packs interleaved channel samples back into format-212 bytes. All
/// channels must have equal length and the total sample count must be even.
/// Values outside the 12-bit signed range throw ArgumentError.
std::vector<std::uint8_t> encode_wfdb_212(
    const std::vector<std::vector<std::int32_t>>& channels);

/// Reads a .dat file and decodes it.
std::vector<std::vector<std::int32_t>> read_wfdb_dat(
    const std::filesystem::path& path, std::size_t n_channels);

}  // namespace labelguard
