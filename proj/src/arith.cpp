#include "fermatq/arith.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numeric>

namespace fq::arith {

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

// the split-multiply path needs a*(b>>32) < 2^128, i.e. moduli at most 2^80
constexpr u128 kU128FastLimit = static_cast<u128>(1) << 80;

u128 add_mod_u128(u128 a, u128 b, u128 m) {
    // wrap-safe for any m below 2^128
    if (a >= m - b) return a - (m - b);
    return a + b;
}

} // namespace

u128 mul_mod_u128(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (m <= kU128FastLimit) {
        // split b into 32-bit halves; every intermediate stays below 2^128
        u128 hi = a * (b >> 32) % m;
        return ((hi << 32) % m + a * (b & 0xffffffffu)) % m;
    }
    u128 result = 0;
    while (b) {
        if (b & 1) result = add_mod_u128(result, a, m);
        a = add_mod_u128(a, a, m);
        b >>= 1;
    }
    return result;
}

u128 pow_mod_u128(u128 base, u128 exp, u128 m) {
    if (m == 1) return 0;
    u128 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod_u128(result, base, m);
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit accumulators
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    assert(r == 1 && "inv_mod of non-unit");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

namespace {

bool mr_witness_u64(u64 n, u64 d, int s, u64 a) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool mr_witness_u128(u128 n, u128 d, int s, u128 a) {
    u128 x = pow_mod_u128(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod_u128(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::array<u32, 12> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u32 p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic below 2^64 with these twelve bases
    for (u32 a : kMrBases) {
        if (!mr_witness_u64(n, d, s, a)) return false;
    }
    return true;
}

bool is_prime_u128(u128 n) {
    if (n >> 64 == 0) return is_prime(static_cast<u64>(n));
    for (u32 p : kMrBases) {
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u32 a : kMrBases) {
        if (!mr_witness_u128(n, d, s, a)) return false;
    }
    // 64 extra pseudorandom rounds, seeded from n for reproducibility
    u64 seed = static_cast<u64>(n) ^ static_cast<u64>(n >> 64);
    for (int i = 0; i < 64; ++i) {
        u128 a = 2 + splitmix64(seed) % (n - 3);
        if (!mr_witness_u128(n, d, s, a)) return false;
    }
    return true;
}

bool is_prime(const BigUint& n) {
    if (n.fits_u128()) return is_prime_u128(n.low_u128());
    for (u32 p : kMrBases) {
        if (n.mod_u64(p) == 0) return false;
    }
    BigUint nm1 = n;
    nm1 -= 1;
    BigUint d = nm1;
    int s = 0;
    while (!d.is_odd()) {
        d = d >> 1;
        ++s;
    }
    u64 seed = n.low_u64() ^ (n.bit_length() * 0x9e3779b97f4a7c15ULL);
    auto witness = [&](const BigUint& a) {
        BigUint x = pow_mod(a, d, n);
        if (x.is_one() || x == nm1) return true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == nm1) return true;
        }
        return false;
    };
    for (u32 a : kMrBases) {
        if (!witness(BigUint(a))) return false;
    }
    for (int i = 0; i < 64; ++i) {
        BigUint a = BigUint(splitmix64(seed)) * BigUint(splitmix64(seed)) + BigUint(2);
        a = a % nm1;
        if (a < BigUint(2)) a += 2;
        if (!witness(a)) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    if (n < 2) return 2;
    u64 c = n + 1;
    if (c % 2 == 0) {
        if (c == 2) return 2;
        ++c;
    }
    while (!is_prime(c)) c += 2;
    return c;
}

BigUint next_prime(const BigUint& n) {
    if (n.fits_u64() && n.low_u64() < UINT64_MAX - 512) return BigUint(next_prime(n.low_u64()));
    BigUint c = n;
    c += 1;
    if (!c.is_odd()) c += 1;
    while (!is_prime(c)) c += 2;
    return c;
}

std::vector<u32> small_primes(u32 limit) {
    std::vector<u32> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u32 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = static_cast<u64>(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::vector<u32> spf_sieve(u32 limit) {
    std::vector<u32> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (u32 i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= limit; j += i) {
                if (spf[j] == 0) spf[j] = i;
            }
        }
    }
    return spf;
}

void prime_range(u64 lo, u64 hi, const std::function<void(u64)>& fn, u64 block) {
    if (hi < lo || hi < 2) return;
    lo = std::max<u64>(lo, 2);
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
    auto base = small_primes(static_cast<u32>(std::min<u64>(root, UINT32_MAX)));
    std::vector<bool> seg;
    for (u64 start = lo; start <= hi; start += block) {
        u64 end = std::min(hi, start + block - 1);
        seg.assign(end - start + 1, true);
        for (u32 p : base) {
            u64 p2 = static_cast<u64>(p) * p;
            if (p2 > end) break;
            u64 first = std::max(p2, (start + p - 1) / p * p);
            for (u64 j = first; j <= end; j += p) seg[j - start] = false;
        }
        for (u64 v = start; v <= end; ++v) {
            if (v >= 2 && seg[v - start]) fn(v);
        }
    }
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    prime_range(lo, hi, [&](u64 p) { out.push_back(p); });
    return out;
}

u64 count_primes(u64 lo, u64 hi) {
    u64 n = 0;
    prime_range(lo, hi, [&](u64) { ++n; });
    return n;
}

void walk_primes(u64 start, u64 limit, const std::function<void(u64)>& fn) {
    u64 p = start;
    while (p < limit) {
        p = next_prime(p + 1); // smallest prime >= p+2
        fn(p);
    }
}

PrimeModulus::PrimeModulus(u64 prime) : p(prime), p_squared(static_cast<u128>(prime) * prime) {
    if (!is_prime(prime)) throw std::invalid_argument("PrimeModulus: " + std::to_string(prime) + " is not prime");
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of n or 0 when
// the iteration budget runs out. n must be odd, composite, not a prime power
// handled elsewhere.
u64 rho_brent_u64(u64 n, u64 seed0) {
    u64 seed = seed0;
    for (int attempt = 0; attempt < 32; ++attempt) {
        u64 c = 1 + splitmix64(seed) % (n - 1);
        u64 y = 1 + splitmix64(seed) % (n - 1);
        u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
        const u64 m = 128;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            do {
                ys = (mul_mod(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return 0;
}

u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 rho_step_u128(u128 y, u128 c, u128 n) {
    return add_mod_u128(mul_mod_u128(y, y, n), c % n, n);
}

u128 rho_brent_u128(u128 n, u64 budget, u64 seed0) {
    u64 seed = seed0;
    u64 used = 0;
    while (used < budget) {
        u128 c = 1 + splitmix64(seed) % 0xffffffffffffULL;
        u128 y = 2 + splitmix64(seed) % 0xffffffffffffULL;
        u128 g = 1, r = 1, q = 1, x = 0, ys = 0;
        const u64 m = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (u128 i = 0; i < r; ++i) y = rho_step_u128(y, c, n);
            used += static_cast<u64>(r);
            u128 k = 0;
            while (k < r && g == 1) {
                ys = y;
                u128 lim = std::min<u128>(m, r - k);
                for (u128 i = 0; i < lim; ++i) {
                    y = rho_step_u128(y, c, n);
                    q = mul_mod_u128(q, x > y ? x - y : y - x, n);
                }
                used += static_cast<u64>(2 * lim);
                g = gcd_u128(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = rho_step_u128(ys, c, n);
                g = gcd_u128(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

BigUint rho_brent_big(const BigUint& n, u64 budget) {
    u64 seed = n.low_u64() ^ 0x9e3779b97f4a7c15ULL;
    u64 used = 0;
    while (used < budget) {
        BigUint c(1 + splitmix64(seed) % 0xffffffffULL);
        BigUint y(2 + splitmix64(seed) % 0xffffffffULL);
        auto step = [&](const BigUint& v) { return (v * v + c) % n; };
        BigUint g(1), q(1), x, ys;
        u64 r = 1;
        const u64 m = 64;
        while (g.is_one() && used < budget) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            used += r;
            u64 k = 0;
            while (k < r && g.is_one()) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = (q * (x > y ? x - y : y - x)) % n;
                }
                used += 2 * lim;
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g.is_one());
        }
        if (!g.is_one() && g != n) return g;
    }
    return BigUint();
}

} // namespace

FactorizationU64 factorize(u64 n) {
    assert(n >= 1);
    FactorizationU64 out{n, {}};
    auto push = [&](u64 p, unsigned e) { out.factors.emplace_back(p, e); };
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            push(p, e);
        }
    }
    for (u64 p = 17; p * p <= n && p < 1024; p += 2) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            push(p, e);
        }
    }
    // split the remaining cofactor with rho
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    std::vector<u64> primes;
    while (!stack.empty()) {
        u64 v = stack.back();
        stack.pop_back();
        if (is_prime(v)) {
            primes.push_back(v);
            continue;
        }
        u64 d = rho_brent_u64(v, v ^ 0xdeadbeefULL);
        if (d == 0 || d == 1 || d == v)
            throw std::runtime_error("rho failed to split " + std::to_string(v));
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        push(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

Factorization factorize(const BigUint& n, u64 rho_budget) {
    assert(!n.is_zero());
    Factorization out{n, {}};
    if (n.fits_u64()) {
        auto f = factorize(n.low_u64());
        for (auto& [p, e] : f.factors) out.factors.emplace_back(BigUint(p), e);
        return out;
    }
    BigUint rest = n;
    static const std::vector<u32> trial = small_primes(100000);
    for (u32 p : trial) {
        if (rest.fits_u64()) break;
        if (rest.mod_u64(p) == 0) {
            unsigned e = 0;
            while (rest.mod_u64(p) == 0) {
                rest.divrem_u64(p);
                ++e;
            }
            out.factors.emplace_back(BigUint(p), e);
        }
    }
    std::vector<BigUint> stack;
    std::vector<BigUint> primes;
    if (!rest.is_one()) stack.push_back(rest);
    while (!stack.empty()) {
        BigUint v = std::move(stack.back());
        stack.pop_back();
        if (v.fits_u64()) {
            auto f = factorize(v.low_u64());
            for (auto& [p, e] : f.factors)
                for (unsigned i = 0; i < e; ++i) primes.emplace_back(p);
            continue;
        }
        if (is_prime(v)) {
            primes.push_back(std::move(v));
            continue;
        }
        if (v.fits_u128()) {
            u128 d = rho_brent_u128(v.low_u128(), rho_budget, v.low_u64() ^ 0x5bd1e995ULL);
            if (d == 0)
                throw BudgetExhausted("rho budget exhausted on cofactor " + v.to_decimal());
            stack.push_back(BigUint::from_u128(d));
            stack.push_back(BigUint::from_u128(v.low_u128() / d));
            continue;
        }
        BigUint d = rho_brent_big(v, rho_budget);
        if (d.is_zero()) throw BudgetExhausted("rho budget exhausted on cofactor " + v.to_decimal());
        stack.push_back(v.div_exact(d));
        stack.push_back(std::move(d));
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

u64 euler_phi(const FactorizationU64& f) {
    u64 r = 1;
    for (auto [p, e] : f.factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i) r *= p;
    }
    return r;
}

u64 euler_phi(u64 n) {
    if (n == 0) return 0;
    return euler_phi(factorize(n));
}

int moebius(u64 n) {
    assert(n >= 1);
    auto f = factorize(n);
    for (auto [p, e] : f.factors) {
        if (e > 1) return 0;
    }
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

DivisorSet divisors(const FactorizationU64& f) {
    DivisorSet out;
    out.n = f.value;
    out.divisors = {1};
    for (auto [p, e] : f.factors) {
        std::size_t sz = out.divisors.size();
        u64 pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.divisors.push_back(out.divisors[j] * pk);
        }
    }
    std::sort(out.divisors.begin(), out.divisors.end());
    return out;
}

u64 multiplicative_order(u64 a, u64 p, const FactorizationU64& pm1) {
    a %= p;
    if (a == 0) throw std::domain_error("multiplicative_order: p divides a");
    u64 d = p - 1;
    for (auto [q, e] : pm1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (pow_mod(a, d / q, p) == 1)
                d /= q;
            else
                break;
        }
    }
    return d;
}

u64 multiplicative_order(u64 a, u64 p) {
    return multiplicative_order(a, p, factorize(p - 1));
}

u64 floor_log(u64 value, u64 base) {
    assert(base >= 2);
    u64 h = 0;
    u128 v = base;
    while (v <= value) {
        ++h;
        v *= base;
    }
    return h;
}

u64 phi_squared_sum(u64 p) {
    assert(p >= 2 && p - 1 < (u64(1) << 32));
    auto f = factorize(p - 1);
    u64 total = 1;
    for (auto [q, e] : f.factors) {
        u64 s = 1, qk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            qk *= q;
            u64 phi = qk - qk / q;
            s += phi * phi;
        }
        total *= s;
    }
    return total;
}

BigUint phi_squared_sum_of(const Factorization& nf) {
    BigUint total(1);
    for (const auto& [q, e] : nf.factors) {
        BigUint s(1), qk(1);
        for (unsigned i = 1; i <= e; ++i) {
            qk = qk * q;
            BigUint phi = qk - qk / q;
            s += phi * phi;
        }
        total = total * s;
    }
    return total;
}

} // namespace fq::arith
