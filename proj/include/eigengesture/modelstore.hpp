#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "eigengesture/trainer.hpp"

namespace eigengesture {

inline constexpr std::array<char, 4> kModelMagic{'E', 'G', 'S', 'P'};
inline constexpr std::uint32_t kModelVersion = 1;

/// EGSP v1 layout, all integers and IEEE-754 doubles little-endian:
///
///   magic "EGSP" | version u32 | n2 u32 | m u32 | k u32
///   mean                 n2 doubles
///   eigenvalues          k doubles
///   eigenimages          n2*k doubles, column-major
///   training_weights     k*m doubles, column-major
///   threshold            1 double
///   labels               m times (u32 byte length + UTF-8 bytes)
///   crc32                u32 over all preceding bytes
struct ModelFileHeader {
    std::array<char, 4> magic = kModelMagic;
    std::uint32_t version = kModelVersion;
    std::uint32_t n2 = 0;
    std::uint32_t m = 0;
    std::uint32_t k = 0;
};

/// Serialize the model; returns the number of bytes written.
std::size_t save_model(const EigenspaceModel& model, std::ostream& sink);

/// Parse and validate an EGSP stream: magic, version, CRC32, then every
/// structural model invariant. The file format carries no TrainConfig, so the
/// loaded config_echo is reconstructed (ExplicitK(k), remaining defaults).
EigenspaceModel load_model(std::istream& source);

std::size_t save_model_file(const EigenspaceModel& model, const std::filesystem::path& path);
EigenspaceModel load_model_file(const std::filesystem::path& path);

}  // namespace eigengesture
