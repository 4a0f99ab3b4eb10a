#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace etc {

// Deterministic counter-based 64-bit keystream. Word i is the SplitMix64
// finalizer applied to seed + i * GAMMA; see docs/keystream.md for the exact
// pseudocode every implementation must reproduce.
class Keystream {
public:
    explicit Keystream(uint64_t seed) : seed_(seed) {}

    uint64_t next_word() {
        uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, m) via rejection sampling; exact for every m,
    // including the non-power-of-two ranges (3 inversions, 6 color perms).
    uint64_t uniform(uint64_t m);

    bool next_bit() { return uniform(2) != 0; }

    uint64_t words_consumed() const { return counter_; }

private:
    uint64_t seed_;
    uint64_t counter_ = 0;
};

// Stateless mix used by the documented key-derivation chain.
uint64_t mix64(uint64_t x);

uint64_t fnv1a64(std::string_view bytes);

// In-place Fisher-Yates driven by the given stream: for i = n-1 .. 1 swap
// a[i] with a[uniform(i+1)].
void fisher_yates(std::vector<uint32_t>& a, Keystream& ks);

} // namespace etc
