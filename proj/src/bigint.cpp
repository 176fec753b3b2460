#include "fermatq/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <stdexcept>

namespace fq {

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_u128(u128 v) {
    BigUint r;
    if (v != 0) r.limbs_.push_back(static_cast<u64>(v));
    if (v >> 64) r.limbs_.push_back(static_cast<u64>(v >> 64));
    return r;
}

u128 BigUint::low_u128() const {
    u128 v = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<u128>(limbs_[1]) << 64;
    return v;
}

BigUint BigUint::from_decimal(std::string_view s) {
    BigUint r;
    for (char c : s) {
        if (c == '\'' || c == '_') continue;
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
        r.mul_u64(10);
        r += static_cast<u64>(c - '0');
    }
    return r;
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - static_cast<std::size_t>(__builtin_clzll(limbs_.back())));
}

double BigUint::to_double() const {
    double r = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
    return r;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + (i < o.limbs_.size() ? o.limbs_[i] : 0) + carry;
        limbs_[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
        if (carry == 0 && i >= o.limbs_.size()) break;
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator+=(u64 v) {
    u64 carry = v;
    for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + carry;
        limbs_[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    assert(compare(o) >= 0 && "BigUint underflow");
    u64 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 cur = limbs_[i];
        u128 rhs = static_cast<u128>(i < o.limbs_.size() ? o.limbs_[i] : 0) + borrow;
        limbs_[i] = static_cast<u64>(static_cast<u128>(cur) - rhs);
        borrow = static_cast<u128>(cur) < rhs ? 1 : 0;
        if (borrow == 0 && i >= o.limbs_.size()) break;
    }
    trim();
    return *this;
}

BigUint& BigUint::operator-=(u64 v) {
    BigUint o(v);
    return *this -= o;
}

BigUint BigUint::operator*(const BigUint& o) const {
    if (is_zero() || o.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        u64 a = limbs_[i];
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(a) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        r.limbs_[i + o.limbs_.size()] += carry;
    }
    r.trim();
    return r;
}

BigUint& BigUint::mul_u64(u64 v) {
    if (v == 0 || is_zero()) {
        limbs_.clear();
        return *this;
    }
    u64 carry = 0;
    for (auto& limb : limbs_) {
        u128 cur = static_cast<u128>(limb) * v + carry;
        limb = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

u64 BigUint::divrem_u64(u64 v) {
    assert(v != 0);
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (rem << 64) | limbs_[i];
        limbs_[i] = static_cast<u64>(cur / v);
        rem = cur % v;
    }
    trim();
    return static_cast<u64>(rem);
}

u64 BigUint::mod_u64(u64 v) const {
    assert(v != 0);
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) rem = ((rem << 64) | limbs_[i]) % v;
    return static_cast<u64>(rem);
}

BigUint BigUint::operator<<(unsigned bits) const {
    if (is_zero()) return BigUint();
    unsigned words = bits / 64, rem = bits % 64;
    BigUint r;
    r.limbs_.assign(limbs_.size() + words + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        r.limbs_[i + words] |= rem ? (limbs_[i] << rem) : limbs_[i];
        if (rem) r.limbs_[i + words + 1] |= limbs_[i] >> (64 - rem);
    }
    r.trim();
    return r;
}

BigUint BigUint::operator>>(unsigned bits) const {
    unsigned words = bits / 64, rem = bits % 64;
    if (words >= limbs_.size()) return BigUint();
    BigUint r;
    r.limbs_.assign(limbs_.begin() + words, limbs_.end());
    if (rem) {
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            r.limbs_[i] >>= rem;
            if (i + 1 < r.limbs_.size()) r.limbs_[i] |= r.limbs_[i + 1] << (64 - rem);
        }
    }
    r.trim();
    return r;
}

// Knuth algorithm D on 64-bit limbs.
BigUint::DivRem BigUint::divrem(const BigUint& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero");
    if (compare(d) < 0) return {BigUint(), *this};
    if (d.limbs_.size() == 1) {
        DivRem out{*this, BigUint()};
        u64 r = out.quot.divrem_u64(d.limbs_[0]);
        out.rem = BigUint(r);
        return out;
    }
    unsigned shift = static_cast<unsigned>(__builtin_clzll(d.limbs_.back()));
    BigUint u = *this << shift;
    BigUint v = d << shift;
    std::size_t n = v.limbs_.size();
    std::size_t m = u.limbs_.size() - n;
    u.limbs_.push_back(0);

    BigUint q;
    q.limbs_.assign(m + 1, 0);
    u64 vtop = v.limbs_[n - 1];
    u64 vsec = v.limbs_[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u.limbs_[j + n]) << 64) | u.limbs_[j + n - 1];
        u128 qhat = num / vtop;
        u128 rhat = num % vtop;
        while (qhat >> 64 || qhat * vsec > ((rhat << 64) | u.limbs_[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >> 64) break;
        }
        // multiply-subtract
        u128 borrow = 0, carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 prod = qhat * v.limbs_[i] + carry;
            carry = prod >> 64;
            u64 lo = static_cast<u64>(prod);
            u128 sub = static_cast<u128>(u.limbs_[i + j]) - lo - borrow;
            u.limbs_[i + j] = static_cast<u64>(sub);
            borrow = (sub >> 64) ? 1 : 0;
        }
        u128 sub = static_cast<u128>(u.limbs_[j + n]) - carry - borrow;
        u.limbs_[j + n] = static_cast<u64>(sub);
        if (sub >> 64) {
            // qhat was one too large; add back
            --qhat;
            u64 c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 s = static_cast<u128>(u.limbs_[i + j]) + v.limbs_[i] + c;
                u.limbs_[i + j] = static_cast<u64>(s);
                c = static_cast<u64>(s >> 64);
            }
            u.limbs_[j + n] += c;
        }
        q.limbs_[j] = static_cast<u64>(qhat);
    }
    q.trim();
    u.limbs_.resize(n);
    u.trim();
    return {q, u >> shift};
}

BigUint BigUint::div_exact(const BigUint& d) const {
    DivRem dr = divrem(d);
    if (!dr.rem.is_zero()) {
        assert(false && "div_exact with nonzero remainder");
        std::abort();
    }
    return dr.quot;
}

BigUint BigUint::pow(u64 exponent) const {
    BigUint result(1), base = *this;
    while (exponent) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

std::string BigUint::to_decimal() const {
    if (is_zero()) return "0";
    BigUint t = *this;
    std::string out;
    while (!t.is_zero()) {
        u64 chunk = t.divrem_u64(10000000000000000000ULL); // 10^19
        if (t.is_zero()) {
            out.insert(0, std::to_string(chunk));
        } else {
            std::string part = std::to_string(chunk);
            out.insert(0, std::string(19 - part.size(), '0') + part);
        }
    }
    return out;
}

double log_natural(const BigUint& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    std::size_t bits = x.bit_length();
    if (bits <= 512) return std::log(x.to_double());
    double top = (x >> static_cast<unsigned>(bits - 64)).to_double();
    return std::log(top) + static_cast<double>(bits - 64) * 0.6931471805599453094;
}

BigUint gcd(BigUint a, BigUint b) {
    while (!b.is_zero()) {
        BigUint r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigUint mul_mod(const BigUint& a, const BigUint& b, const BigUint& m) {
    return (a * b) % m;
}

BigUint pow_mod(const BigUint& base, const BigUint& exp, const BigUint& mod) {
    if (mod.is_one() || mod.is_zero()) return BigUint();
    BigUint result(1), b = base % mod;
    std::size_t bits = exp.bit_length();
    for (std::size_t i = 0; i < bits; ++i) {
        if ((exp.limb(i / 64) >> (i % 64)) & 1) result = mul_mod(result, b, mod);
        if (i + 1 < bits) b = mul_mod(b, b, mod);
    }
    return result;
}

} // namespace fq
