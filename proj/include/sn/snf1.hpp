/// \file snf1.hpp
/// \brief SNF1 field files: a short key=value text header followed by the
///        raw little-endian float64 blob, row-major. See docs/formats.md.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "sn/grid.hpp"

namespace sn {

struct Snf1Header {
    int n = 0;
    double half_width = 0.0;
    double p = 2.0;
    SymmetryClass symmetry = SymmetryClass::none;
    std::string created_by;
    std::uint64_t content_hash = 0;  // FNV-1a 64 of the data blob
};

struct Snf1File {
    Snf1Header header;
    ScalarField field;
};

/// FNV-1a 64-bit hash, the content hash used across file manifests.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

void snf1_write(const std::filesystem::path& path, const ScalarField& u, double p,
                SymmetryClass symmetry, const std::string& created_by);

/// Throws std::runtime_error on malformed headers, short blobs, hash
/// mismatches, or non-finite data.
Snf1File snf1_read(const std::filesystem::path& path);

std::string to_string(SymmetryClass s);
SymmetryClass symmetry_from_string(const std::string& s);

}  // namespace sn
