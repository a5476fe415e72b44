#include "sn/snf1.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "SNF1 writes the host byte order and is specified little-endian");

namespace sn {

std::string to_string(SymmetryClass s) {
    return s == SymmetryClass::odd_in_x2 ? "odd" : "none";
}

SymmetryClass symmetry_from_string(const std::string& s) {
    if (s == "odd" || s == "odd_in_x2") return SymmetryClass::odd_in_x2;
    if (s == "none") return SymmetryClass::none;
    throw std::runtime_error("unknown symmetry class '" + s + "'");
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize k = 0; k < in.gcount(); ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void snf1_write(const std::filesystem::path& path, const ScalarField& u, double p,
                SymmetryClass symmetry, const std::string& created_by) {
    const auto vals = u.values();
    const auto* raw = reinterpret_cast<const unsigned char*>(vals.data());
    const std::uint64_t hash = fnv1a64({raw, vals.size() * sizeof(double)});

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot create " + path.string());
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016" PRIx64, hash);
    out << "format=SNF1\n"
        << "n=" << u.spec().n << "\n"
        << "L=" << fmt_double(u.spec().half_width) << "\n"
        << "p=" << fmt_double(p) << "\n"
        << "symmetry=" << to_string(symmetry) << "\n"
        << "created-by=" << created_by << "\n"
        << "content-hash=" << hashbuf << "\n"
        << "end\n";
    out.write(reinterpret_cast<const char*>(raw),
              static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Snf1File snf1_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::map<std::string, std::string> kv;
    std::string line;
    bool terminated = false;
    while (std::getline(in, line)) {
        if (line == "end") {
            terminated = true;
            break;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path.string() + ": malformed header line '" + line + "'");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (!terminated) throw std::runtime_error(path.string() + ": missing 'end' header terminator");
    for (const char* key : {"format", "n", "L", "p", "symmetry", "content-hash"})
        if (!kv.count(key))
            throw std::runtime_error(path.string() + ": missing header key '" + key + "'");
    if (kv["format"] != "SNF1")
        throw std::runtime_error(path.string() + ": not an SNF1 file (format=" + kv["format"] + ")");

    Snf1File f;
    f.header.n = std::stoi(kv["n"]);
    f.header.half_width = std::stod(kv["L"]);
    f.header.p = std::stod(kv["p"]);
    f.header.symmetry = symmetry_from_string(kv["symmetry"]);
    f.header.created_by = kv.count("created-by") ? kv["created-by"] : "";
    f.header.content_hash = std::stoull(kv["content-hash"], nullptr, 16);

    f.field = ScalarField(make_grid(f.header.half_width, f.header.n));
    auto vals = f.field.values();
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(vals.size() * sizeof(double)))
        throw std::runtime_error(path.string() + ": truncated data blob");

    const auto* raw = reinterpret_cast<const unsigned char*>(vals.data());
    if (fnv1a64({raw, vals.size() * sizeof(double)}) != f.header.content_hash)
        throw std::runtime_error(path.string() + ": content hash mismatch (corrupt data)");
    for (double v : vals)
        if (!std::isfinite(v))
            throw std::runtime_error(path.string() + ": non-finite values in field");
    return f;
}

}  // namespace sn
