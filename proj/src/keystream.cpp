#include "etc/keystream.hpp"

#include <limits>

namespace etc {

uint64_t Keystream::uniform(uint64_t m) {
    if (m <= 1) return 0;
    // rem = 2^64 mod m; reject the top partial bucket.
    const uint64_t max = std::numeric_limits<uint64_t>::max();
    const uint64_t rem = (max % m + 1) % m;
    uint64_t r;
    do {
        r = next_word();
    } while (rem != 0 && r > max - rem);
    return r % m;
}

uint64_t mix64(uint64_t x) {
    uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void fisher_yates(std::vector<uint32_t>& a, Keystream& ks) {
    for (size_t i = a.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(ks.uniform(i));
        std::swap(a[i - 1], a[j]);
    }
}

} // namespace etc
