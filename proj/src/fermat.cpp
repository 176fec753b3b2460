#include "fermatq/fermat.hpp"

#include "fermatq/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace fq::fermat {

using arith::mul_mod;
using arith::mul_mod_u128;
using arith::pow_mod;
using arith::pow_mod_u128;

u64 fermat_quotient(u64 a, const PrimeModulus& p) {
    if (a % p.p == 0) throw std::domain_error("fermat_quotient: p divides a");
    u128 r = pow_mod_u128(a, p.p - 1, p.p_squared);
    return static_cast<u64>((r - 1) / p.p);
}

u64 fermat_quotient(const BigUint& a, const PrimeModulus& p) {
    BigUint p2 = BigUint(p.p) * BigUint(p.p);
    u128 red = (a % p2).low_u128();
    if (red % p.p == 0) throw std::domain_error("fermat_quotient: p divides a");
    u128 r = pow_mod_u128(red, p.p - 1, p.p_squared);
    return static_cast<u64>((r - 1) / p.p);
}

bool is_quotient_zero(u64 a, const PrimeModulus& p) {
    if (a % p.p == 0) return false;
    return pow_mod_u128(a, p.p - 1, p.p_squared) == 1;
}

namespace {

// Phi_m(a) mod p^2 through the Moebius product; the denominator factors are
// units mod p^2 because p | a^d - 1 only when ord_p(a) | d.
u128 phi_order_mod_p2(u64 m, u128 a, const PrimeModulus& p) {
    u128 p2 = p.p_squared;
    a %= p2;
    if (m == 1) return (a + p2 - 1) % p2;
    if (m == 2) return (a + 1) % p2;
    auto ds = arith::divisors(arith::factorize(m));
    u128 num = 1, den = 1;
    for (u64 d : ds.divisors) {
        int mu = arith::moebius(m / d);
        if (mu == 0) continue;
        u128 t = pow_mod_u128(a, d, p2);
        t = (t + p2 - 1) % p2;
        if (mu > 0)
            num = mul_mod_u128(num, t, p2);
        else
            den = mul_mod_u128(den, t, p2);
    }
    u128 phi_p2_m1 = static_cast<u128>(p.p) * (p.p - 1) - 1;
    u128 inv_den = pow_mod_u128(den, phi_p2_m1, p2); // den^(phi(p^2)-1)
    return mul_mod_u128(num, inv_den, p2);
}

} // namespace

QuotientVariants quotient_variants(u64 a, const PrimeModulus& p) {
    if (a % p.p == 0) throw std::domain_error("quotient_variants: p divides a");
    QuotientVariants out;
    out.q = fermat_quotient(a, p);
    out.order = arith::multiplicative_order(a % p.p, p.p);
    out.t = (p.p - 1) / out.order;
    u128 x = pow_mod_u128(a, out.order, p.p_squared);
    out.q_prime = static_cast<u64>(((x - 1) / p.p) % p.p);
    u128 v = phi_order_mod_p2(out.order, a, p);
    assert(v % p.p == 0 && "Phi_ord(a) must be divisible by p");
    out.q_dprime = static_cast<u64>((v / p.p) % p.p);
    if (out.q % p.p != mul_mod(out.t % p.p, out.q_prime, p.p))
        throw std::logic_error("quotient variant congruence q == t*q' failed");
    bool z = out.q == 0;
    out.vanish_together = (z == (out.q_prime == 0)) && (z == (out.q_dprime == 0));
    return out;
}

Lift lift_to_solution(u64 z, u64 u, const PrimeModulus& p) {
    assert(z >= 1 && z < p.p && u < p.p);
    Lift out;
    out.z = z;
    out.u = u;
    u64 q = fermat_quotient(z, p);
    u64 diff = (q + p.p - u) % p.p;
    out.lambda = mul_mod(z, diff, p.p);
    out.value = static_cast<u128>(z) + static_cast<u128>(out.lambda) * p.p;
    return out;
}

QuotientSieve::QuotientSieve(u32 max_p) : max_p_(max_p), spf_(arith::spf_sieve(max_p)) {
    q_.resize(static_cast<std::size_t>(max_p) + 1);
}

void QuotientSieve::for_each_quotient(u64 p, const std::function<void(u64, u64)>& fn) {
    if (p > max_p_) throw std::length_error("QuotientSieve: p exceeds the sieve limit");
    u128 p2 = static_cast<u128>(p) * p;
    for (u64 z = 2; z < p; ++z) {
        u64 q;
        if (spf_[z] == z) {
            q = static_cast<u64>((pow_mod_u128(z, p - 1, p2) - 1) / p);
        } else {
            u64 a = spf_[z], b = z / spf_[z];
            q = q_[a] + q_[b];
            if (q >= p) q -= p;
        }
        q_[z] = static_cast<u32>(q);
        fn(z, q);
    }
}

void QuotientSieve::for_each_quotient_direct(u64 p, const std::function<void(u64, u64)>& fn) {
    u128 p2 = static_cast<u128>(p) * p;
    for (u64 z = 2; z < p; ++z) fn(z, static_cast<u64>((pow_mod_u128(z, p - 1, p2) - 1) / p));
}

std::vector<SolutionRecord> solutions_in_range(const PrimeModulus& p, u32 sieve_limit) {
    std::vector<u64> zs;
    auto collect = [&](u64 z, u64 q) {
        if (q == 0) zs.push_back(z);
    };
    if (p.p <= sieve_limit) {
        QuotientSieve sieve(static_cast<u32>(p.p));
        sieve.for_each_quotient(p.p, collect);
    } else {
        QuotientSieve::for_each_quotient_direct(p.p, collect);
    }
    std::vector<SolutionRecord> out;
    out.reserve(zs.size());
    auto pm1 = arith::factorize(p.p - 1);
    for (u64 z : zs) out.push_back({p.p, z, 0, arith::multiplicative_order(z, p.p, pm1)});
    return out;
}

std::vector<u64> solutions_mod_p2(const PrimeModulus& p) {
    if (p.p >= (u64(1) << 31)) throw std::length_error("solutions_mod_p2: p beyond 2^31");
    u64 p2 = p.p * p.p;
    std::vector<u64> out;
    out.reserve(p.p - 1);
    for (u64 z = 1; z < p.p; ++z) out.push_back(pow_mod(z, p.p, p2));
    std::sort(out.begin(), out.end());
    return out;
}

CrtSolutionSet crt_solutions(const std::vector<u64>& primes) {
    CrtSolutionSet out;
    out.primes = primes;
    out.modulus = BigUint(1);
    out.residues = {BigUint(0)};
    // fold prime by prime: x = r + M*((s - r) * M^{-1} mod p^2)
    for (u64 pv : primes) {
        if (pv >= (u64(1) << 31)) throw std::length_error("crt_solutions: prime beyond 2^31");
        PrimeModulus pm(pv);
        u64 p2 = pv * pv;
        auto sols = solutions_mod_p2(pm);
        u64 m_mod = out.modulus.mod_u64(p2);
        u64 m_inv = arith::inv_mod(m_mod, p2);
        std::vector<BigUint> next;
        next.reserve(out.residues.size() * sols.size());
        for (const BigUint& r : out.residues) {
            u64 r_mod = r.mod_u64(p2);
            for (u64 s : sols) {
                u64 delta = (s + p2 - r_mod) % p2;
                u64 k = mul_mod(delta, m_inv, p2);
                next.push_back(out.modulus * BigUint(k) + r);
            }
        }
        out.residues = std::move(next);
        out.modulus = out.modulus * BigUint(p2);
    }
    std::sort(out.residues.begin(), out.residues.end());
    return out;
}

std::vector<u64> orders_of_powers(u64 g, const PrimeModulus& p) {
    if (g % p.p == 0) throw std::domain_error("orders_of_powers: p divides g");
    if (g < 2) throw std::domain_error("orders_of_powers requires g >= 2");
    std::vector<u64> out;
    auto pm1 = arith::factorize(p.p - 1);
    u128 power = g;
    while (power < p.p) {
        out.push_back(arith::multiplicative_order(static_cast<u64>(power) % p.p, p.p, pm1));
        power *= g;
    }
    return out;
}

std::vector<ThetaOffset> theta_offsets(u64 a, const PrimeModulus& p) {
    if (a % p.p == 0) throw std::domain_error("theta_offsets: p divides a");
    if (p.p_squared >> 63) throw std::length_error("theta_offsets: p too large");
    u64 d = arith::multiplicative_order(a % p.p, p.p);
    u64 qa = fermat_quotient(a, p);
    u64 p2 = p.p * p.p;
    std::vector<ThetaOffset> out;
    out.reserve(d > 0 ? d - 1 : 0);
    for (u64 j = 1; j < d; ++j) {
        ThetaOffset t;
        t.j = j;
        t.a_j = pow_mod(a % p.p, j, p.p);
        u64 aj_pow = pow_mod(a % p2, j, p2);
        u64 inv = pow_mod(t.a_j, p.p * (p.p - 1) - 1, p2);
        u64 ratio = mul_mod(aj_pow, inv, p2);
        assert(ratio % p.p == 1);
        t.theta = ratio / p.p;
        u64 lhs = fermat_quotient(t.a_j, p);
        u64 rhs = (mul_mod(j % p.p, qa, p.p) + t.theta) % p.p;
        if (lhs != rhs) throw std::logic_error("theta offset congruence failed");
        out.push_back(t);
    }
    return out;
}

std::optional<u64> first_solution_search(u64 a, u64 lo, u64 hi, const SearchOptions& opts) {
    if (a < 2) throw std::domain_error("first_solution_search requires a >= 2");
    auto chunks = make_chunks(lo, hi, opts.chunk);
    auto scan_chunk = [&](std::size_t idx) -> u64 {
        const auto& c = chunks[idx];
        u64 found = UINT64_MAX;
        arith::prime_range(c.lo, c.hi, [&](u64 p) {
            if (found != UINT64_MAX || a % p == 0) return;
            u128 p2 = static_cast<u128>(p) * p;
            if (pow_mod_u128(a, p - 1, p2) == 1) found = p;
        });
        return found;
    };
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            u64 f = scan_chunk(i);
            if (opts.progress) opts.progress(chunks[i].hi);
            if (f != UINT64_MAX) return f;
        }
        return std::nullopt;
    }
    // workers grab chunk indices in order; chunks that start past an already
    // found prime are skipped, and the merge takes the first hit in index order
    std::vector<u64> results(chunks.size(), UINT64_MAX);
    std::atomic<u64> best{UINT64_MAX};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks.size()) return;
            u64 cur = best.load();
            if (cur != UINT64_MAX && chunks[i].lo > cur) continue;
            u64 f = scan_chunk(i);
            results[i] = f;
            if (f != UINT64_MAX) {
                u64 prev = best.load();
                while (f < prev && !best.compare_exchange_weak(prev, f)) {
                }
            }
            if (opts.progress) opts.progress(chunks[i].hi);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        if (results[i] != UINT64_MAX) return results[i];
    }
    return std::nullopt;
}

AverageCount average_solution_count(u64 a_lo, u64 a_hi, u64 p_bound) {
    if (a_lo < 2 || a_hi < a_lo) throw std::domain_error("average_solution_count: bad base range");
    AverageCount out;
    out.a_values = a_hi - a_lo + 1;
    for (u64 a = a_lo; a <= a_hi; ++a) {
        if (a % 4 == 1) ++out.zero_pairs; // the p = 2 accounting, done up front
    }
    arith::walk_primes(1, p_bound, [&](u64 p) {
        u128 p2 = static_cast<u128>(p) * p;
        for (u64 a = a_lo; a <= a_hi; ++a) {
            if (a % p != 0 && pow_mod_u128(a, p - 1, p2) == 1) ++out.zero_pairs;
        }
    });
    out.mean = static_cast<double>(out.zero_pairs) / static_cast<double>(out.a_values);
    return out;
}

} // namespace fq::fermat
