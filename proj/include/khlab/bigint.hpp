#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace khlab {

// Arbitrary-precision integer with an inline fast path: values are held in a
// plain long long until they outgrow it, and demoted back when they shrink,
// so equality stays structural. The wide representation is sign-magnitude
// base 2^32.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) : v_(v) {}

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return mag_.empty() ? v_ == 0 : false; }
    bool is_unit() const { return mag_.empty() && (v_ == 1 || v_ == -1); }
    bool is_one() const { return mag_.empty() && v_ == 1; }
    bool is_even() const { return mag_.empty() ? (v_ & 1) == 0 : (mag_[0] & 1u) == 0; }
    int sign() const;

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncated division: a = q*b + r with |r| < |b| and sign(r) == sign(a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;
    // Nearest quotient: |a - q*b| <= |b|/2.
    BigInt divround(const BigInt& b) const;

    static BigInt gcd(BigInt a, BigInt b);

    bool operator==(const BigInt& o) const { return v_ == o.v_ && sgn_ == o.sgn_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator<=(const BigInt& o) const { return *this == o || *this < o; }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return o <= *this; }

    int cmp_abs(const BigInt& o) const;

    bool fits_ll() const;
    long long to_ll() const;
    std::string to_string() const;

private:
    long long v_ = 0;              // small mode iff mag_ empty
    int sgn_ = 0;                  // big-mode sign
    std::vector<uint32_t> mag_;    // big-mode magnitude, little endian

    static constexpr long long kSmallMax = (1LL << 62) - 1;

    bool small() const { return mag_.empty(); }
    void to_big(int& sgn, std::vector<uint32_t>& mag) const;
    static BigInt from_big(int sgn, std::vector<uint32_t> mag);

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace khlab
