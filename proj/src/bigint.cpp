#include "khlab/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace khlab {

int BigInt::sign() const
{
    if (small()) return v_ > 0 ? 1 : v_ < 0 ? -1 : 0;
    return sgn_;
}

void BigInt::to_big(int& sgn, std::vector<uint32_t>& mag) const
{
    if (!small()) {
        sgn = sgn_;
        mag = mag_;
        return;
    }
    sgn = v_ > 0 ? 1 : v_ < 0 ? -1 : 0;
    mag.clear();
    unsigned long long m = v_ > 0 ? static_cast<unsigned long long>(v_) : 0ULL - static_cast<unsigned long long>(v_);
    while (m) {
        mag.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
        m >>= 32;
    }
}

BigInt BigInt::from_big(int sgn, std::vector<uint32_t> mag)
{
    while (!mag.empty() && mag.back() == 0) mag.pop_back();
    BigInt out;
    if (mag.empty()) return out;
    if (mag.size() <= 2) {
        unsigned long long m = mag[0];
        if (mag.size() == 2) m |= static_cast<unsigned long long>(mag[1]) << 32;
        if (m <= static_cast<unsigned long long>(kSmallMax)) {
            out.v_ = sgn < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
            return out;
        }
    }
    out.sgn_ = sgn;
    out.mag_ = std::move(mag);
    out.v_ = 0;
    return out;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
{
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
{
    const auto& x = a.size() >= b.size() ? a : b;
    const auto& y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[x.size()] = static_cast<uint32_t>(carry);
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
{
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += (1LL << 32);
            borrow = 1;
        }
        else
            borrow = 0;
        r[i] = static_cast<uint32_t>(s);
    }
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            uint64_t s = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        r[i + b.size()] += static_cast<uint32_t>(carry);
    }
    return r;
}

void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r)
{
    if (b.empty()) throw std::domain_error("division by zero");
    if (cmp_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (std::size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        r.clear();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }
    int shift = 0;
    while (((b.back() << shift) & 0x80000000u) == 0) ++shift;
    auto shl = [&](const std::vector<uint32_t>& v) {
        std::vector<uint32_t> out(v.size() + 1, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] |= v[i] << shift;
            if (shift) out[i + 1] = v[i] >> (32 - shift);
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    std::vector<uint32_t> u = shl(a), v = shl(b);
    std::size_t n = v.size(), m = u.size() - n;
    u.resize(u.size() + 1, 0);
    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        uint64_t top = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = top / v[n - 1];
        uint64_t rhat = top % v[n - 1];
        while (qhat >= (1ULL << 32) || qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= (1ULL << 32)) break;
        }
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffULL) - borrow;
            if (t < 0) {
                t += (1LL << 32);
                borrow = 1;
            }
            else
                borrow = 0;
            u[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
        if (t < 0) {
            t += (1LL << 32);
            --qhat;
            uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(s);
                c2 = s >> 32;
            }
            t += static_cast<int64_t>(c2);
        }
        u[j + n] = static_cast<uint32_t>(t);
        q[j] = static_cast<uint32_t>(qhat);
    }
    r.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = u[i] >> shift;
        if (shift && i + 1 < u.size()) r[i] |= u[i + 1] << (32 - shift);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const
{
    if (small()) {
        BigInt r;
        r.v_ = -v_;
        return r;
    }
    BigInt r = *this;
    r.sgn_ = -r.sgn_;
    return r;
}

BigInt BigInt::abs() const
{
    return sign() < 0 ? -*this : *this;
}

BigInt operator+(const BigInt& a, const BigInt& b)
{
    if (a.small() && b.small()) {
        long long s;
        if (!__builtin_add_overflow(a.v_, b.v_, &s) && s <= BigInt::kSmallMax && s >= -BigInt::kSmallMax) {
            BigInt r;
            r.v_ = s;
            return r;
        }
    }
    int sa, sb;
    std::vector<uint32_t> ma, mb;
    a.to_big(sa, ma);
    b.to_big(sb, mb);
    if (sa == 0) return b;
    if (sb == 0) return a;
    if (sa == sb) return BigInt::from_big(sa, BigInt::add_mag(ma, mb));
    int c = BigInt::cmp_mag(ma, mb);
    if (c == 0) return BigInt();
    if (c > 0) return BigInt::from_big(sa, BigInt::sub_mag(ma, mb));
    return BigInt::from_big(sb, BigInt::sub_mag(mb, ma));
}

BigInt operator-(const BigInt& a, const BigInt& b)
{
    return a + (-b);
}

BigInt operator*(const BigInt& a, const BigInt& b)
{
    if (a.small() && b.small()) {
        long long p;
        if (!__builtin_mul_overflow(a.v_, b.v_, &p) && p <= BigInt::kSmallMax && p >= -BigInt::kSmallMax) {
            BigInt r;
            r.v_ = p;
            return r;
        }
    }
    int sa, sb;
    std::vector<uint32_t> ma, mb;
    a.to_big(sa, ma);
    b.to_big(sb, mb);
    if (sa == 0 || sb == 0) return BigInt();
    return BigInt::from_big(sa * sb, BigInt::mul_mag(ma, mb));
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r)
{
    if (a.small() && b.small()) {
        if (b.v_ == 0) throw std::domain_error("division by zero");
        // LLONG_MIN pitfalls cannot arise: smalls are bounded by kSmallMax
        q = BigInt(a.v_ / b.v_);
        r = BigInt(a.v_ % b.v_);
        return;
    }
    int sa, sb;
    std::vector<uint32_t> ma, mb, mq, mr;
    a.to_big(sa, ma);
    b.to_big(sb, mb);
    divmod_mag(ma, mb, mq, mr);
    q = from_big(sa * sb, std::move(mq));
    r = from_big(sa, std::move(mr));
}

BigInt BigInt::operator/(const BigInt& b) const
{
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const
{
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::divround(const BigInt& b) const
{
    BigInt q, r;
    divmod(*this, b, q, r);
    if (r.is_zero()) return q;
    BigInt twice = r + r;
    if (twice.cmp_abs(b) > 0) {
        if (r.sign() * b.sign() > 0)
            q += BigInt(1);
        else
            q -= BigInt(1);
    }
    return q;
}

BigInt BigInt::gcd(BigInt a, BigInt b)
{
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool BigInt::operator<(const BigInt& o) const
{
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa < sb;
    if (small() && o.small()) return v_ < o.v_;
    int c = cmp_abs(o);
    return sa >= 0 ? c < 0 : c > 0;
}

int BigInt::cmp_abs(const BigInt& o) const
{
    if (small() && o.small()) {
        unsigned long long x = v_ < 0 ? 0ULL - static_cast<unsigned long long>(v_) : static_cast<unsigned long long>(v_);
        unsigned long long y =
            o.v_ < 0 ? 0ULL - static_cast<unsigned long long>(o.v_) : static_cast<unsigned long long>(o.v_);
        return x < y ? -1 : x > y ? 1 : 0;
    }
    int sa, sb;
    std::vector<uint32_t> ma, mb;
    to_big(sa, ma);
    o.to_big(sb, mb);
    return cmp_mag(ma, mb);
}

bool BigInt::fits_ll() const
{
    return small();
}

long long BigInt::to_ll() const
{
    if (!small()) throw std::overflow_error("BigInt::to_ll");
    return v_;
}

std::string BigInt::to_string() const
{
    if (is_zero()) return "0";
    if (small()) return std::to_string(v_);
    std::vector<uint32_t> m = mag_;
    std::string out;
    while (!m.empty()) {
        uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int k = 0; k < 9; ++k) {
            out.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
            if (m.empty() && rem == 0) break;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    if (sgn_ < 0) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

BigInt BigInt::from_string(const std::string& s)
{
    BigInt r;
    std::size_t i = 0;
    int sgn = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sgn = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt::from_string: empty");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt::from_string: bad digit");
        r *= BigInt(10);
        r += BigInt(s[i] - '0');
    }
    if (sgn < 0) r = -r;
    return r;
}

}  // namespace khlab
