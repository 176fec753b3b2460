#include "doctest.h"
#include "fermatq/fermat.hpp"

#include <map>
#include <random>
#include <set>

using namespace fq;
using namespace fq::fermat;
using arith::PrimeModulus;

TEST_CASE("fermat_quotient basics") {
    CHECK(fermat_quotient(3, PrimeModulus(11)) == 0);
    CHECK(fermat_quotient(1, PrimeModulus(11)) == 0);
    CHECK(fermat_quotient(2, PrimeModulus(7)) == 2);
    CHECK(fermat_quotient(2, PrimeModulus(11)) == 5);
    CHECK_THROWS_AS(fermat_quotient(22, PrimeModulus(11)), std::domain_error);
    // p = 2: zero exactly for a == 1 (mod 4)
    CHECK(fermat_quotient(5, PrimeModulus(2)) == 0);
    CHECK(fermat_quotient(3, PrimeModulus(2)) == 1);
    CHECK(fermat_quotient(BigUint::from_decimal("123456789123456789127"), PrimeModulus(11)) ==
          fermat_quotient(BigUint::from_decimal("123456789123456789127").mod_u64(121),
                          PrimeModulus(11)));
}

TEST_CASE("published zero pairs verify pointwise") {
    const std::pair<u64, u64> pairs[] = {
        {34, 46145917691ULL}, {66, 89351671ULL},     {88, 2535619637ULL},
        {90, 6590291053ULL},  {5, 6692367337ULL},    {23, 15546404183ULL},
        {37, 76407520781ULL}, {97, 76704103313ULL},  {5, 188748146801ULL},
        {2, 1093},            {2, 3511},             {3, 1006003},
    };
    for (auto [a, p] : pairs) CHECK(is_quotient_zero(a, PrimeModulus(p)));
    CHECK_FALSE(is_quotient_zero(2, PrimeModulus(5)));
}

TEST_CASE("quotient_variants") {
    auto v = quotient_variants(14, PrimeModulus(29));
    CHECK(v.q == 0);
    CHECK(v.q_prime == 0);
    CHECK(v.q_dprime == 0);
    CHECK(v.order == 28);
    CHECK(v.vanish_together);

    auto w = quotient_variants(2, PrimeModulus(7));
    CHECK(w.order == 3);
    CHECK(w.q_prime == 1); // (8-1)/7
    CHECK(w.t == 2);
    CHECK(w.q == 2);
    CHECK(w.vanish_together); // none of the three vanish

    auto one = quotient_variants(1, PrimeModulus(13));
    CHECK(one.q == 0);
    CHECK(one.order == 1);
    CHECK(one.q_prime == 0);
    CHECK(one.q_dprime == 0);

    // congruence q == t q' holds across a grid (throws internally if not)
    std::mt19937_64 rng(5);
    auto ps = arith::primes_in(3, 300);
    for (u64 p : ps) {
        for (u64 a = 2; a < std::min<u64>(p, 30); ++a) {
            auto qv = quotient_variants(a, PrimeModulus(p));
            bool z = qv.q == 0;
            REQUIRE(qv.vanish_together == ((z == (qv.q_prime == 0)) && (z == (qv.q_dprime == 0))));
            REQUIRE(z == (qv.q_prime == 0)); // nullity equivalence of the variants
            REQUIRE(z == (qv.q_dprime == 0));
        }
    }
}

TEST_CASE("lift_to_solution") {
    auto l = lift_to_solution(3, 0, PrimeModulus(11));
    CHECK(l.lambda == 0);
    CHECK(l.value == 3);
    auto l2 = lift_to_solution(2, 0, PrimeModulus(11));
    CHECK(l2.value == 112);
    // lifting z to its own quotient is the identity
    for (u64 z = 1; z < 11; ++z) {
        u64 q = fermat_quotient(z, PrimeModulus(11));
        CHECK(lift_to_solution(z, q, PrimeModulus(11)).lambda == 0);
    }
    // the lift really has quotient u, for a spread of (z, u, p)
    for (u64 p : {11ULL, 97ULL, 1009ULL}) {
        PrimeModulus pm(p);
        for (u64 z = 1; z < p; z += 7) {
            for (u64 u = 0; u < p; u += 13) {
                auto lf = lift_to_solution(z, u, pm);
                u64 zz = static_cast<u64>(lf.value % p);
                REQUIRE(zz == z);
                REQUIRE(fermat_quotient(BigUint::from_u128(lf.value), pm) == u);
            }
        }
    }
}

TEST_CASE("solutions_in_range small primes") {
    auto s11 = solutions_in_range(PrimeModulus(11));
    REQUIRE(s11.size() == 2);
    CHECK(s11[0].z == 3);
    CHECK(s11[0].order == 5);
    CHECK(s11[1].z == 9);
    CHECK(s11[1].order == 5);

    auto s29 = solutions_in_range(PrimeModulus(29));
    REQUIRE(s29.size() == 1);
    CHECK(s29[0].z == 14);
    CHECK(s29[0].order == 28);

    auto s37 = solutions_in_range(PrimeModulus(37));
    REQUIRE(s37.size() == 1);
    CHECK(s37[0].z == 18);
    CHECK(s37[0].order == 36);

    auto s43 = solutions_in_range(PrimeModulus(43));
    REQUIRE(s43.size() == 1);
    CHECK(s43[0].z == 19);
    CHECK(s43[0].order == 42);

    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL, 17ULL, 19ULL, 23ULL, 31ULL, 41ULL}) {
        if (p < 3) continue;
        CHECK(solutions_in_range(PrimeModulus(p)).empty());
    }
}

TEST_CASE("sieve path equals direct powmod path") {
    arith::prime_range(3, 10000, [&](u64 p) {
        std::vector<std::pair<u64, u64>> sieved, direct;
        QuotientSieve sieve(static_cast<u32>(p));
        sieve.for_each_quotient(p, [&](u64 z, u64 q) { sieved.emplace_back(z, q); });
        QuotientSieve::for_each_quotient_direct(p, [&](u64 z, u64 q) { direct.emplace_back(z, q); });
        REQUIRE(sieved == direct);
    });
}

TEST_CASE("quotient is a logarithm: q(ab) = q(a)+q(b) mod p") {
    std::mt19937_64 rng(2024);
    auto ps = arith::primes_in(3, 50000);
    for (int i = 0; i < 10000; ++i) {
        u64 p = ps[rng() % ps.size()];
        PrimeModulus pm(p);
        u64 a = 1 + rng() % (p - 1);
        u64 b = 1 + rng() % (p - 1);
        BigUint ab = BigUint(a) * BigUint(b);
        u64 lhs = fermat_quotient(ab, pm);
        u64 rhs = (fermat_quotient(a, pm) + fermat_quotient(b, pm)) % p;
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("lambda symmetry lambda(z) + lambda(p-z) = p-1") {
    arith::prime_range(3, 1000, [&](u64 p) {
        PrimeModulus pm(p);
        std::vector<u64> lam(p, 0);
        for (u64 z = 1; z < p; ++z) lam[z] = lift_to_solution(z, 0, pm).lambda;
        for (u64 z = 1; z < p; ++z) REQUIRE(lam[z] + lam[p - z] == p - 1);
    });
}

TEST_CASE("solutions_mod_p2 is a bijection image") {
    std::vector<u64> s11 = solutions_mod_p2(PrimeModulus(11));
    CHECK(s11 == std::vector<u64>{1, 3, 9, 27, 40, 81, 94, 112, 118, 120});
    std::vector<u64> s3 = solutions_mod_p2(PrimeModulus(3));
    CHECK(s3 == std::vector<u64>{1, 8});
    arith::prime_range(3, 500, [&](u64 p) {
        auto s = solutions_mod_p2(PrimeModulus(p));
        REQUIRE(s.size() == p - 1);
        REQUIRE(std::set<u64>(s.begin(), s.end()).size() == p - 1);
        u64 p2 = p * p;
        for (u64 Z : s) {
            REQUIRE(Z >= 1);
            REQUIRE(Z < p2);
            REQUIRE(arith::pow_mod(Z, p - 1, p2) == 1);
        }
    });
}

TEST_CASE("power solutions: q(a^j) = j q(a) while a^j < p") {
    arith::prime_range(3, 2000, [&](u64 p) {
        PrimeModulus pm(p);
        for (u64 a = 2; a * a < p; ++a) {
            u64 qa = fermat_quotient(a, pm);
            u128 power = a;
            u64 j = 1;
            while (power < p) {
                REQUIRE(fermat_quotient(static_cast<u64>(power), pm) ==
                        arith::mul_mod(j, qa, p));
                power *= a;
                ++j;
            }
        }
    });
}

TEST_CASE("crt_solutions") {
    auto crt = crt_solutions({5, 7});
    CHECK(crt.modulus == BigUint(1225));
    std::vector<u64> expect{1,   18,  68,  99,  226, 276, 293,  324,  374,  393,  557,  607,
                            618, 668, 832, 851, 901, 932, 949,  999,  1126, 1157, 1207, 1224};
    REQUIRE(crt.residues.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) REQUIRE(crt.residues[i] == BigUint(expect[i]));

    auto crt23 = crt_solutions({2, 3});
    REQUIRE(crt23.residues.size() == 2);
    CHECK(crt23.residues[0] == BigUint(1));
    CHECK(crt23.residues[1] == BigUint(17));

    // single prime reduces to solutions_mod_p2
    auto crt11 = crt_solutions({11});
    auto direct = solutions_mod_p2(PrimeModulus(11));
    REQUIRE(crt11.residues.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) REQUIRE(crt11.residues[i] == BigUint(direct[i]));

    // brute-force cardinality check over small moduli
    for (std::vector<u64> set : {std::vector<u64>{2, 3}, {3, 5}, {2, 3, 5}, {5, 7}}) {
        auto c = crt_solutions(set);
        u64 expect_count = 1;
        for (u64 p : set) expect_count *= p - 1;
        REQUIRE(c.residues.size() == expect_count);
        u64 M = c.modulus.low_u64();
        u64 brute = 0;
        for (u64 A = 1; A < M; ++A) {
            bool all = true;
            for (u64 p : set) {
                if (A % p == 0 || arith::pow_mod(A, p - 1, p * p) != 1) {
                    all = false;
                    break;
                }
            }
            brute += all;
        }
        REQUIRE(brute == expect_count);
    }
}

TEST_CASE("orders_of_powers") {
    PrimeModulus p(37813);
    CHECK(orders_of_powers(3, p) ==
          std::vector<u64>{18906, 9453, 6302, 9453, 18906, 3151, 18906, 9453, 6302});
    CHECK(orders_of_powers(5, p) == std::vector<u64>{37812, 18906, 12604, 9453, 37812, 6302});
    CHECK(orders_of_powers(37820, p).empty()); // g >= p gives nothing below p
}

TEST_CASE("theta_offsets") {
    auto t37 = theta_offsets(3, PrimeModulus(11));
    REQUIRE(t37.size() == 4); // order 5
    CHECK(t37[0].theta == 0);
    CHECK(t37[1].theta == 0);
    CHECK(t37[2].theta == 7);
    CHECK(t37[3].theta == 10);

    auto t27 = theta_offsets(2, PrimeModulus(7));
    REQUIRE(t27.size() == 2);
    CHECK(t27[0].theta == 0);
    CHECK(t27[1].theta == 0);

    // theta vanishes whenever the plain power stays below p
    for (u64 p : {101ULL, 1093ULL}) {
        auto ts = theta_offsets(2, PrimeModulus(p));
        u64 h = arith::floor_log(p, 2);
        for (const auto& t : ts) {
            if (t.j <= h) REQUIRE(t.theta == 0);
        }
    }
}

TEST_CASE("first_solution_search") {
    CHECK(first_solution_search(3, 2, 100) == 11);
    CHECK(first_solution_search(2, 2, 3000) == 1093);
    CHECK_FALSE(first_solution_search(2, 2, 1000).has_value());
    CHECK(first_solution_search(5, 2, 10) == 2);
    // chunked runs agree with one big scan regardless of chunk size
    SearchOptions tiny;
    tiny.chunk = 64;
    CHECK(first_solution_search(3, 2, 2000, tiny) == 11);
    SearchOptions threaded;
    threaded.threads = 4;
    threaded.chunk = 128;
    CHECK(first_solution_search(2, 2, 5000, threaded) == 1093);
}

TEST_CASE("average_solution_count over the small table") {
    auto avg = average_solution_count(2, 14, 100);
    CHECK(avg.a_values == 13);
    CHECK(avg.zero_pairs == 10);
    CHECK(avg.mean == doctest::Approx(10.0 / 13.0).epsilon(1e-12));
}
