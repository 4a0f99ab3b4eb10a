#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace etc {

// Minimal unsigned big integer: just enough arithmetic for key-space counts
// (products of factorials and small powers).
class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(uint64_t v);

    static BigUint factorial(uint64_t n);
    static BigUint pow(uint64_t base, uint64_t exp);

    void mul_small(uint64_t m);
    BigUint& operator*=(const BigUint& other);

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    size_t bit_length() const;
    std::string to_string() const; // decimal

    bool operator==(const BigUint&) const = default;

private:
    std::vector<uint32_t> limbs_; // base 2^32, little-endian, normalized
    void normalize();
};

} // namespace etc
