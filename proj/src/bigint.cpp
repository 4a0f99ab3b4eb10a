#include "etc/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace etc {

BigUint::BigUint(uint64_t v) {
    limbs_.push_back(static_cast<uint32_t>(v));
    limbs_.push_back(static_cast<uint32_t>(v >> 32));
    normalize();
}

void BigUint::normalize() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

void BigUint::mul_small(uint64_t m) {
    if (m == 0) {
        limbs_.assign(1, 0);
        return;
    }
    // split m to keep partial products within 64 bits
    uint32_t lo = static_cast<uint32_t>(m);
    uint32_t hi = static_cast<uint32_t>(m >> 32);
    std::vector<uint32_t> out(limbs_.size() + 2, 0);
    auto add_at = [&out](size_t pos, uint64_t v) {
        while (v != 0) {
            uint64_t s = out[pos] + (v & 0xFFFFFFFFULL);
            out[pos] = static_cast<uint32_t>(s);
            v = (v >> 32) + (s >> 32);
            ++pos;
        }
    };
    for (size_t i = 0; i < limbs_.size(); ++i) {
        add_at(i, static_cast<uint64_t>(limbs_[i]) * lo);
        if (hi) add_at(i + 1, static_cast<uint64_t>(limbs_[i]) * hi);
    }
    limbs_ = std::move(out);
    normalize();
}

BigUint& BigUint::operator*=(const BigUint& other) {
    std::vector<uint32_t> out(limbs_.size() + other.limbs_.size() + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < other.limbs_.size() || carry; ++j) {
            uint64_t cur = out[i + j] + carry;
            if (j < other.limbs_.size())
                cur += static_cast<uint64_t>(limbs_[i]) * other.limbs_[j];
            out[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
    }
    limbs_ = std::move(out);
    normalize();
    return *this;
}

BigUint BigUint::factorial(uint64_t n) {
    BigUint r(1);
    for (uint64_t i = 2; i <= n; ++i) r.mul_small(i);
    return r;
}

BigUint BigUint::pow(uint64_t base, uint64_t exp) {
    BigUint r(1);
    for (uint64_t i = 0; i < exp; ++i) r.mul_small(base);
    return r;
}

size_t BigUint::bit_length() const {
    if (is_zero()) return 0;
    uint32_t top = limbs_.back();
    size_t bits = (limbs_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> work = limbs_;
    std::string out;
    while (!(work.size() == 1 && work[0] == 0)) {
        uint64_t rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<uint32_t>(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        while (work.size() > 1 && work.back() == 0) work.pop_back();
        bool last = work.size() == 1 && work[0] == 0;
        std::string chunk = std::to_string(rem);
        if (!last) chunk.insert(0, 9 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

} // namespace etc
