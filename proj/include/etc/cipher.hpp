#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etc/bigint.hpp"
#include "etc/transform.hpp"

namespace etc {

// Four independent 64-bit seeds, one per scrambling step.
struct SecretKey {
    uint64_t k1 = 0; // block permutation
    uint64_t k2 = 0; // rotation / inversion
    uint64_t k3 = 0; // negative-positive
    uint64_t k4 = 0; // color shuffle

    bool operator==(const SecretKey&) const = default;
};

struct CipherConfig {
    int block_w = 32;
    int block_h = 32;
    bool scramble = true;
    bool rotation = true;
    bool inversion = true;
    bool negpos = true;
    bool colorshuffle = true;

    static CipherConfig for_type(PuzzleType type, int block_w = 32, int block_h = 32);

    StepFlags steps() const { return {scramble, rotation, inversion, negpos, colorshuffle}; }
    std::optional<PuzzleType> type_label() const { return type_of_steps(steps()); }
    std::string type_name() const; // Table-row label, or "custom"

    bool operator==(const CipherConfig&) const = default;
};

// Expanded key material for an n-block image: the slot permutation plus one
// transform per encrypted slot. permutation[slot] = source block index.
struct KeyExpansion {
    std::vector<uint32_t> permutation;
    std::vector<BlockTransform> transforms;

    int count() const { return static_cast<int>(permutation.size()); }
};

KeyExpansion expand_key(const SecretKey& key, int n, const CipherConfig& config);

RasterImage encrypt(const RasterImage& image, const SecretKey& key, const CipherConfig& config);
RasterImage decrypt(const RasterImage& image, const SecretKey& key, const CipherConfig& config);

struct KeySpace {
    BigUint value;
    double log2 = 0.0;
};

// n!^[scramble] * 4^n^[rotation] * 3^n^[inversion] * 2^n^[negpos] * 6^n^[shuffle]
KeySpace key_space(int n, const CipherConfig& config);

// Key files: JSON with k1..k4 as unsigned decimal strings plus the config.
struct KeyFile {
    SecretKey key;
    CipherConfig config;
};

KeyFile read_key_file(const std::string& path);
void write_key_file(const KeyFile& kf, const std::string& path);
SecretKey keygen(uint64_t seed);

} // namespace etc
