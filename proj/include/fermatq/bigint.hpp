#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Unsigned arbitrary-precision integer, little-endian 64-bit limbs.
// Covers the sizes this toolkit needs (cyclotomic values up to a few
// thousand bits, 41-digit primes, exact moment sums); not a general
// purpose bignum library.
class BigUint {
  public:
    BigUint() = default;
    BigUint(u64 v) { // NOLINT(google-explicit-constructor)
        if (v != 0) limbs_.push_back(v);
    }
    static BigUint from_u128(u128 v);
    static BigUint from_decimal(std::string_view s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    bool fits_u128() const { return limbs_.size() <= 2; }
    u64 low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }
    u128 low_u128() const;
    std::size_t bit_length() const;
    double to_double() const;
    std::string to_decimal() const;

    int compare(const BigUint& other) const;
    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigUint& o) const { return limbs_ != o.limbs_; }
    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
    bool operator>(const BigUint& o) const { return compare(o) > 0; }
    bool operator>=(const BigUint& o) const { return compare(o) >= 0; }

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o); // requires *this >= o
    BigUint& operator+=(u64 v);
    BigUint& operator-=(u64 v);
    BigUint operator+(const BigUint& o) const { BigUint r = *this; r += o; return r; }
    BigUint operator-(const BigUint& o) const { BigUint r = *this; r -= o; return r; }
    BigUint operator*(const BigUint& o) const;
    BigUint operator<<(unsigned bits) const;
    BigUint operator>>(unsigned bits) const;

    BigUint& mul_u64(u64 v);
    // returns remainder
    u64 divrem_u64(u64 v);

    struct DivRem;
    DivRem divrem(const BigUint& d) const;
    BigUint operator/(const BigUint& d) const;
    BigUint operator%(const BigUint& d) const;
    u64 mod_u64(u64 v) const;

    // exact division; aborts if the division leaves a remainder
    BigUint div_exact(const BigUint& d) const;

    BigUint pow(u64 exponent) const;

    std::size_t limb_count() const { return limbs_.size(); }
    u64 limb(std::size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }

  private:
    std::vector<u64> limbs_;
    void trim();
    friend BigUint mul_mod(const BigUint&, const BigUint&, const BigUint&);
};

struct BigUint::DivRem {
    BigUint quot;
    BigUint rem;
};

inline BigUint BigUint::operator/(const BigUint& d) const { return divrem(d).quot; }
inline BigUint BigUint::operator%(const BigUint& d) const { return divrem(d).rem; }

BigUint gcd(BigUint a, BigUint b);
BigUint mul_mod(const BigUint& a, const BigUint& b, const BigUint& m);
BigUint pow_mod(const BigUint& base, const BigUint& exp, const BigUint& mod);
// natural log, stable for values past the double range
double log_natural(const BigUint& x);

} // namespace fq
