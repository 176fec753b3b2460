#include "fermatq/densities.hpp"

#include "fermatq/cyclotomic.hpp"
#include "fermatq/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fq::dens {

namespace {

struct KahanSum {
    double sum = 0, c = 0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

} // namespace

LocalDensityCoefficient c_p(u64 m, u64 p) {
    if (m < 1) throw std::domain_error("c_p: m >= 1 required");
    LocalDensityCoefficient out{m, p, 0};
    if (m % p == 0) {
        out.c = (m == 2) ? 1 : 0;
        return out;
    }
    out.c = (p % m == 1 % m) ? arith::euler_phi(m) : 0;
    return out;
}

u64 c_p_bruteforce(u64 m, u64 p) {
    if (p > 1000) throw std::length_error("c_p_bruteforce: p <= 1000");
    u128 p2 = static_cast<u128>(p) * p;
    u64 count = 0;
    for (u64 A = 1; A < p * p; ++A) {
        if (cyclo::phi_m_eval_mod(m, A, p2) == 0) ++count;
    }
    return count;
}

DensityReport p_m_product(u64 m, u64 n_max) {
    DensityReport out;
    out.bound = n_max;
    double f = static_cast<double>(arith::euler_phi(m));
    double product = 1.0;
    u64 terms = 0;
    for (u64 n = 1; n <= n_max; ++n) {
        u64 q = 1 + n * m;
        if (arith::is_prime(q)) {
            product *= 1.0 - f / (static_cast<double>(q) * static_cast<double>(q));
            ++terms;
        }
    }
    out.value = product;
    out.terms_used = terms;
    // tail of the omitted primes, estimated through the progression density
    double X = static_cast<double>(n_max) * static_cast<double>(m);
    out.reference = product * (1.0 - 1.0 / (X * std::log(X)));
    return out;
}

std::vector<LocalTableEntry> local_solution_table(const PrimeModulus& p) {
    if (p.p > 100000) throw std::length_error("local_solution_table: p <= 1e5");
    auto sols = fermat::solutions_mod_p2(p);
    auto pm1 = arith::factorize(p.p - 1);
    std::vector<LocalTableEntry> out;
    out.reserve(sols.size());
    for (u64 Z : sols) out.push_back({Z, arith::multiplicative_order(Z % p.p, p.p, pm1)});
    return out;
}

DpReport dp_product(u64 x) {
    DpReport out;
    out.bound = x;
    KahanSum log_dp, log_mertens, log_corr;
    arith::prime_range(2, x, [&](u64 p) {
        double dp = static_cast<double>(p);
        log_dp.add(std::log1p(-(dp - 1.0) / (dp * dp)));
        log_mertens.add(std::log1p(-1.0 / dp));
        log_corr.add(std::log1p(1.0 / (dp * (dp - 1.0))));
        ++out.terms;
    });
    out.product = std::exp(log_dp.sum);
    out.mertens = std::exp(log_mertens.sum);
    out.correction = std::exp(log_corr.sum);
    out.comparator = 1.09125 / std::log(static_cast<double>(x));
    out.product_times_log = out.product * std::log(static_cast<double>(x));
    return out;
}

CrtCount crt_exact_count(u64 x) {
    CrtCount out{BigUint(1), BigUint(1)};
    arith::prime_range(2, x, [&](u64 p) {
        out.count = out.count * BigUint(p * p - p + 1);
        out.modulus = out.modulus * BigUint(p * p);
    });
    return out;
}

u64 survey_nonzero(u64 y, u64 x, const SurveyOptions& opts) {
    if (y < 2 || x < 2) throw std::domain_error("survey_nonzero: y, x >= 2 required");
    auto primes = arith::primes_in(2, x);
    primes.push_back(arith::next_prime(x)); // the stepping loop runs one prime past x
    std::vector<u64> p2(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) p2[i] = primes[i] * primes[i];
    auto survives = [&](u64 A) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (A % primes[i] == 0) continue; // multiples count as nonzero
            if (arith::pow_mod(A, primes[i] - 1, p2[i]) == 1) return false;
        }
        return true;
    };
    auto chunks = make_chunks(2, y, 256);
    std::atomic<u64> done{0};
    auto counts = run_jobs<u64>(chunks.size(), opts.threads, [&](std::size_t i) {
        u64 n = 0;
        for (u64 A = chunks[i].lo; A <= chunks[i].hi; ++A) n += survives(A);
        u64 d = done.fetch_add(chunks[i].hi - chunks[i].lo + 1) + chunks[i].hi - chunks[i].lo + 1;
        if (opts.progress) opts.progress(d, y - 1);
        return n;
    });
    u64 total = 0;
    for (u64 c : counts) total += c;
    return total;
}

double upsilon(u64 p) {
    double lp = std::log(static_cast<double>(p));
    double s = static_cast<double>(arith::phi_squared_sum(p));
    return (2.0 * std::log(static_cast<double>(p - 1)) - std::log(s)) / lp;
}

double upsilon(const BigUint& p, const arith::Factorization& p_minus_1) {
    BigUint s = arith::phi_squared_sum_of(p_minus_1);
    double lp = log_natural(p);
    return (2.0 * log_natural(p - BigUint(1)) - log_natural(s)) / lp;
}

double eta(const BigUint& p, double C) {
    double lp = log_natural(p);
    return C * std::log(std::log(lp / 0.6931471805599453094)) / lp;
}

EtaUpsilon eta_minus_upsilon(const BigUint& p, double C, u64 rho_budget) {
    EtaUpsilon out;
    auto fact = arith::factorize(p - BigUint(1), rho_budget);
    out.eta_value = eta(p, C);
    out.upsilon_value = upsilon(p, fact);
    out.difference = out.eta_value - out.upsilon_value;
    return out;
}

DensityReport s_partial(u64 x, u64 segment) {
    DensityReport out;
    out.bound = x;
    out.reference = 0.5 * std::log(std::log(static_cast<double>(x)));
    if (x < 2) return out;
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
    auto base = arith::small_primes(static_cast<u32>(root));
    KahanSum total;
    std::vector<u64> rem, acc;
    std::vector<bool> composite;
    u64 carry_acc = 1; // accumulator for the last value of the previous segment
    for (u64 lo = 1; lo <= x; lo += segment) {
        u64 hi = std::min(x, lo + segment - 1); // segment covers [lo, hi]
        std::size_t n = static_cast<std::size_t>(hi - lo + 1);
        rem.resize(n);
        acc.assign(n, 1);
        composite.assign(n, false);
        for (std::size_t i = 0; i < n; ++i) rem[i] = lo + i;
        for (u64 q : base) {
            u64 first = std::max<u64>(q, (lo + q - 1) / q * q);
            // factor accumulation for every multiple
            for (u64 v = first; v <= hi; v += q) {
                std::size_t i = static_cast<std::size_t>(v - lo);
                u64 e = 0;
                while (rem[i] % q == 0) {
                    rem[i] /= q;
                    ++e;
                }
                u64 s = 1, qk = 1;
                for (u64 j = 1; j <= e; ++j) {
                    qk *= q;
                    u64 phi = qk - qk / q;
                    s += phi * phi;
                }
                acc[i] *= s;
            }
            // compositeness marking starts at q^2
            u64 q2 = q * q;
            if (q2 > hi) continue;
            for (u64 v = std::max(q2, first); v <= hi; v += q) composite[v - lo] = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (rem[i] > 1) {
                u64 P = rem[i];
                acc[i] *= 1 + (P - 1) * (P - 1);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            u64 p = lo + i;
            if (p < 2 || composite[i]) continue;
            u64 s = (i == 0) ? carry_acc : acc[i - 1]; // phi-squared sum of p-1
            double dp = static_cast<double>(p);
            double dm1 = static_cast<double>(p - 1);
            total.add(static_cast<double>(s) / (dp * dm1 * dm1));
            ++out.terms_used;
        }
        carry_acc = acc[n - 1];
    }
    out.value = total.sum;
    return out;
}

SeriesSums series_sums(u64 a, u64 bound) {
    if (a < 2) throw std::domain_error("series_sums: a >= 2 required");
    SeriesSums out;
    KahanSum binom, stirling;
    double fact[171];
    fact[0] = 1;
    for (int i = 1; i <= 170; ++i) fact[i] = fact[i - 1] * i;
    arith::prime_range(2, bound, [&](u64 p) {
        u64 h = arith::floor_log(p, a);
        if (h == 0) {
            binom.add(1.0);
            return;
        }
        if (h <= 170) stirling.add(static_cast<double>(h) / fact[h]);
        if (h > p - 2) return; // binomial coefficient vanishes
        double lp = std::log(static_cast<double>(p));
        double lt = std::lgamma(static_cast<double>(p - 1)) - std::lgamma(static_cast<double>(h + 1)) -
                    std::lgamma(static_cast<double>(p - 1 - h)) - static_cast<double>(h) * lp;
        binom.add(std::exp(lt));
    });
    out.binom_sum = binom.sum;
    out.stirling_sum = stirling.sum;
    out.full_tail_sum = std::exp(-1.0) * binom.sum;
    return out;
}

u64 p0_solver(u64 a, double C) {
    if (a < 2) throw std::domain_error("p0_solver: a >= 2 required");
    double lla = std::log(std::log(static_cast<double>(a)));
    double la = std::log(static_cast<double>(a));
    auto g = [&](double xv) {
        double llx = std::log(std::log(xv));
        return (llx - lla - 1.0) / la - (llx - lla) / (2.0 * std::log(xv)) - C;
    };
    double lo = 100.0, hi = 1e12;
    double amin = static_cast<double>(a) * (1.0 + 1e-9) + 1e-9;
    while (lo > amin && g(lo) > 0) lo = std::max(amin, lo / 4.0);
    while (hi < 1e30 && g(hi) < 0) hi *= 10.0;
    if (!(g(lo) < 0 && g(hi) > 0))
        throw std::domain_error("p0_solver: no sign change in the bracket");
    for (int it = 0; it < 240 && hi - lo > 0; ++it) {
        double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        (g(mid) < 0 ? lo : hi) = mid;
    }
    double root = lo + (hi - lo) / 2.0;
    return arith::next_prime(static_cast<u64>(std::floor(root)));
}

} // namespace fq::dens
