#include "fermatq/cyclotomic.hpp"

#include <algorithm>
#include <cassert>

namespace fq::cyclo {

using arith::factorize;
using arith::FactorizationU64;
using arith::moebius;
using arith::multiplicative_order;

BigUint phi_m_eval(u64 m, const BigUint& a) {
    if (a < BigUint(2)) throw std::domain_error("phi_m_eval requires a >= 2");
    if (m == 1) return a - BigUint(1);
    if (m == 2) return a + BigUint(1);
    auto ds = arith::divisors(factorize(m));
    BigUint num(1), den(1);
    for (u64 d : ds.divisors) {
        int mu = moebius(m / d);
        if (mu == 0) continue;
        BigUint t = a.pow(d) - BigUint(1);
        if (mu > 0)
            num = num * t;
        else
            den = den * t;
    }
    return num.div_exact(den);
}

BigUint phi_m_eval(u64 m, u64 a) {
    return phi_m_eval(m, BigUint(a));
}

std::vector<long long> cyclotomic_coeffs(u64 m) {
    // prod over d | m of (x^d - 1)^{mu(m/d)}: multiply the positive part out,
    // then divide by the negative part with exact polynomial division.
    auto ds = arith::divisors(factorize(m)).divisors;
    std::vector<long long> num{1};
    std::vector<u64> den_degrees;
    auto mul_xd_minus_1 = [](std::vector<long long>& poly, u64 d) {
        std::vector<long long> r(poly.size() + d, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            r[i + d] += poly[i];
            r[i] -= poly[i];
        }
        poly = std::move(r);
    };
    auto div_xd_minus_1 = [](std::vector<long long>& poly, u64 d) {
        // poly / (x^d - 1), exact
        std::vector<long long> q(poly.size() - d, 0);
        for (std::size_t i = poly.size(); i-- > d;) {
            long long c = poly[i];
            if (c == 0) continue;
            q[i - d] = c;
            poly[i] -= c;
            poly[i - d] += c;
        }
        for (std::size_t i = 0; i < d; ++i) assert(poly[i] == 0 && "inexact cyclotomic division");
        poly = std::move(q);
    };
    for (u64 d : ds) {
        int mu = moebius(m / d);
        if (mu > 0) mul_xd_minus_1(num, d);
        if (mu < 0) den_degrees.push_back(d);
    }
    for (u64 d : den_degrees) div_xd_minus_1(num, d);
    return num;
}

u128 phi_m_eval_mod(u64 m, u128 a, u128 modulus) {
    auto c = cyclotomic_coeffs(m);
    u128 r = 0;
    a %= modulus;
    for (std::size_t i = c.size(); i-- > 0;) {
        r = arith::mul_mod_u128(r, a, modulus);
        long long coef = c[i];
        if (coef >= 0)
            r = (r + static_cast<u128>(coef)) % modulus;
        else
            r = (r + modulus - static_cast<u128>(-coef) % modulus) % modulus;
    }
    return r;
}

CyclotomicEvaluation reduce(u64 m, u64 a) {
    CyclotomicEvaluation out;
    out.m = m;
    out.a = a;
    out.value = phi_m_eval(m, a);
    u64 g = gcd(out.value, BigUint(m)).low_u64();
    out.gcd_with_m = std::max<u64>(g, 1);
    if (out.gcd_with_m == 1) {
        out.reduced = out.value;
        return out;
    }
    u64 r = out.gcd_with_m;
    if (!arith::is_prime(r))
        throw StructuralViolation("gcd(Phi_m(a), m) = " + std::to_string(r) + " is neither 1 nor prime");
    out.reduced = out.value.div_exact(BigUint(r));
    // m must factor as r^e * ord_r(a), e >= 1
    u64 rest = m;
    unsigned e = 0;
    while (rest % r == 0) {
        rest /= r;
        ++e;
    }
    if (e == 0 || (a % r != 0 && rest != multiplicative_order(a % r, r)))
        throw StructuralViolation("m is not r^e * ord_r(a) for m=" + std::to_string(m) +
                                  ", r=" + std::to_string(r));
    return out;
}

FactorCongruence factor_congruence_check(u64 m, u64 a, u64 rho_budget) {
    if (m == 2) throw std::domain_error("factor_congruence_check requires m != 2");
    FactorCongruence out;
    BigUint v = reduce(m, a).reduced;
    if (v.is_one()) {
        out.all_congruent = true;
        return out;
    }
    BigUint rest = v;
    try {
        auto f = factorize(v, rho_budget);
        out.factors = std::move(f.factors);
        rest = BigUint(1);
    } catch (const arith::BudgetExhausted&) {
        // peel off what a small budget reaches and keep the stuck cofactor
        for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
            unsigned e = 0;
            while (rest.mod_u64(small) == 0) {
                rest.divrem_u64(small);
                ++e;
            }
            if (e) out.factors.emplace_back(BigUint(small), e);
        }
        out.unfactored_cofactor = rest;
    }
    out.all_congruent = !out.unfactored_cofactor.has_value();
    for (const auto& [l, e] : out.factors) {
        (void)e;
        if (l.mod_u64(m) != 1 % m) out.all_congruent = false;
    }
    return out;
}

CoprimalityReport pairwise_coprime_check(u64 a, u64 m_max) {
    CoprimalityReport out;
    std::vector<BigUint> tilde(m_max + 1);
    for (u64 m = 1; m <= m_max; ++m) tilde[m] = reduce(m, a).reduced;
    out.ok = true;
    out.strict_ok = true;
    for (u64 m = 1; m <= m_max; ++m) {
        for (u64 mp = m + 1; mp <= m_max; ++mp) {
            BigUint g = gcd(tilde[m], tilde[mp]);
            if (!g.is_one()) {
                out.violations.emplace_back(m, mp, g);
                out.strict_ok = false;
                if (!(m == 1 && mp == 2)) out.ok = false;
            }
        }
    }
    return out;
}

bool wieferich_equivalence_check(u64 a, const arith::PrimeModulus& p) {
    if (a % p.p == 0) throw std::domain_error("wieferich_equivalence_check: p divides a");
    u64 order = multiplicative_order(a % p.p, p.p);
    bool quotient_zero = arith::pow_mod_u128(a, p.p - 1, p.p_squared) == 1;
    BigUint tilde = reduce(order, a).reduced;
    BigUint p2 = BigUint(p.p) * BigUint(p.p);
    bool divides = (tilde % p2).is_zero();
    if (quotient_zero != divides)
        throw StructuralViolation("quotient nullity and p^2 divisibility disagree at p=" +
                                  std::to_string(p.p) + ", a=" + std::to_string(a));
    return quotient_zero;
}

} // namespace fq::cyclo
