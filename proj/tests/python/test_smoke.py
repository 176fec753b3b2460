"""Smoke tests for the python bindings."""

import math

import fermatq as fq


def approx(a, b, tol):
    assert abs(a - b) <= tol, (a, b, tol)


def main():
    assert fq.is_prime(1093)
    assert not fq.is_prime(1)
    assert fq.is_prime(20000000000000000000000000000000000000477)
    assert fq.next_prime(10**6) == 1000003

    assert fq.fermat_quotient(2, 1093) == 0
    assert fq.fermat_quotient(2, 7) == 2
    assert fq.fermat_quotient(123456789123456789127, 11) == fq.fermat_quotient(
        123456789123456789127 % 121, 11
    )

    assert fq.factorize(28) == [(2, 2), (7, 1)]
    big = 20000000000000000000000000000000000000592
    fac = fq.factorize(big)
    assert fac[-1] == (971250971250971250971250971250971251, 1)
    assert math.prod(p**e for p, e in fac) == big

    assert fq.multiplicative_order(14, 29) == 28
    assert fq.phi_squared_sum(11) == 34

    assert fq.phi_m_eval(6, 5) == 21
    value, g, reduced = fq.cyclotomic_reduce(6, 5)
    assert (value, g, reduced) == (21, 3, 7)
    assert fq.wieferich_equivalence_check(14, 29)
    assert not fq.wieferich_equivalence_check(2, 5)

    lam, Z = fq.lift_to_solution(2, 0, 11)
    assert (lam, Z) == (10, 112)
    assert fq.solutions_in_range(29) == [(14, 28)]
    assert fq.solutions_mod_p2(11) == [1, 3, 9, 27, 40, 81, 94, 112, 118, 120]
    modulus, residues = fq.crt_solutions([5, 7])
    assert modulus == 1225 and len(residues) == 24 and residues[1] == 18
    assert fq.orders_of_powers(3, 37813)[:3] == [18906, 9453, 6302]
    assert fq.first_solution_search(3, 2, 100) == 11
    assert fq.first_solution_search(2, 2, 1000) is None

    c = fq.classify_primes(2, 40)
    assert c["n_total"] == 12 and c["n0"] == 8

    frac, missing = fq.value_coverage(11)
    assert missing == [3, 6, 8, 9]
    assert fq.lambda_multiplicity(97, 41) == [54, 68, 75, 92]

    sigma, digits = fq.sigma_moment(5, 1)
    approx(sigma, 0.25, 1e-15)

    approx(fq.binomial_tail(11, 1), 1 - (10 / 11) ** 9, 1e-12)
    approx(fq.ratio_encadre(100003, 2), 0.3908, 5e-4)
    approx(fq.epsilon_exponent(101, 2), 1.097, 1e-3)

    assert fq.c_p(5, 11) == 4
    count, modulus = fq.crt_exact_count(5)
    assert (count, modulus) == (441, 900)
    assert fq.survey_nonzero(10, 10) == 3
    approx(fq.eta_minus_upsilon(20000000000000000000000000000000000000477), 0.008018, 1e-5)
    approx(fq.s_partial(10), 0.781349, 1e-5)
    assert fq.p0_solver(2, 1.0) == 79

    print("python smoke: all assertions passed")


if __name__ == "__main__":
    main()
