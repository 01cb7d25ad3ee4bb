#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace pamlab;
using testsupport::Rng;

TEST_CASE("p-adic weight of concrete values", "[padic]") {
    CHECK(padic_weight(Rational(12), 2) == -2);
    CHECK(padic_weight(Rational(1, 8), 2) == 3);
    CHECK(padic_weight(Rational(5, 6), 3) == 1);
    CHECK(padic_weight(Rational(-12), 2) == -2);
    CHECK_THROWS_AS(padic_weight(Rational(0), 2), Error);
}

TEST_CASE("m-weight vectors over a basis", "[padic]") {
    const PrimeBasis b23 = make_prime_basis({2, 3});

    WeightVector w = m_weight_vector(Rational(5, 6), b23);
    CHECK(w.per_prime == std::vector<Weight>{1, 1});
    CHECK(w.m_weight == 1);
    CHECK_FALSE(w.residual);

    w = m_weight_vector(Rational(9, 4), b23);
    CHECK(w.per_prime == std::vector<Weight>{2, -2});
    CHECK(w.m_weight == 2);

    w = m_weight_vector(Rational(1, 5), b23);
    CHECK(w.residual);
    CHECK(w.infinite());

    // numerator primes outside the basis do not make the weight infinite
    w = m_weight_vector(Rational(5, 4), b23);
    CHECK_FALSE(w.residual);
    CHECK(w.m_weight == 2);
}

TEST_CASE("weight lower bound by exact power comparison", "[padic]") {
    CHECK(weight_lower_bound(1, make_prime_basis({2})) == -1);
    CHECK(weight_lower_bound(2, make_prime_basis({2, 3})) == -6);
    CHECK(weight_lower_bound(3, make_prime_basis({2})) == -3);
}

TEST_CASE("weight lower bound holds on the full enumeration", "[padic]") {
    // oracle: scan every candidate and check each per-prime weight
    for (const Weight a : {1, 2, 3}) {
        const PrimeBasis basis = make_prime_basis({2, 3});
        const Weight b = weight_lower_bound(a, basis);
        for (const Rational& x : enumerate_bounded_weight(a, basis)) {
            if (x == 0) continue;
            for (const Integer& p : prime_factors(numerator(x) * denominator(x)))
                CHECK(padic_weight(x, p) >= b);
        }
    }
}

TEST_CASE("bounded-weight enumeration", "[padic]") {
    const PrimeBasis b2 = make_prime_basis({2});
    const PrimeBasis b23 = make_prime_basis({2, 3});

    CHECK(enumerate_bounded_weight(1, b23) == std::vector<Rational>{0, 1});
    CHECK(enumerate_bounded_weight(2, b2) == std::vector<Rational>{0, {1, 2}, 1});
    CHECK(enumerate_bounded_weight(2, b23) ==
          std::vector<Rational>{0, {1, 6}, {1, 3}, {1, 2}, {2, 3}, {5, 6}, 1});

    CHECK_THROWS_AS(enumerate_bounded_weight(12, b23), Error);

    // closed under x -> 1-x
    for (const Weight a : {1, 2, 3}) {
        const std::vector<Rational> s = enumerate_bounded_weight(a, b23);
        for (const Rational& x : s)
            CHECK(std::find(s.begin(), s.end(), 1 - x) != s.end());
    }
}

TEST_CASE("weight algebra on random pairs", "[padic]") {
    Rng rng(20260810);
    const PrimeBasis basis = make_prime_basis({2, 3, 5});
    for (int trial = 0; trial < 500; ++trial) {
        const Rational x = rng.rational(720);
        const Rational y = rng.rational(720);
        for (const Integer& p : basis.primes) {
            const Weight wx = padic_weight(x, p);
            const Weight wy = padic_weight(y, p);
            CHECK(padic_weight(x * y, p) == wx + wy);
            if (wx == wy && x + y != 0) CHECK(padic_weight(x + y, p) <= wx);
            if (wx < wy) CHECK(padic_weight(x + y, p) == wy);
            const long r = rng.pick(1, 4);
            CHECK(padic_weight(rational_pow(x, r), p) == r * wx);
        }
    }
}

TEST_CASE("reconstruction from the weight vector", "[padic]") {
    Rng rng(7);
    const PrimeBasis basis = make_prime_basis({2, 3, 5});
    for (int trial = 0; trial < 100; ++trial) {
        Rational x = 1;
        for (const Integer& p : basis.primes) x *= rational_pow(Rational(p), rng.pick(-4, 4));
        const WeightVector w = m_weight_vector(x, basis);
        REQUIRE_FALSE(w.residual);
        Rational back = 1;
        for (std::size_t i = 0; i < basis.size(); ++i)
            back *= rational_pow(Rational(basis.primes[i]), -w.per_prime[i]);
        CHECK(back == x);
    }
}

TEST_CASE("basis extension by factoring", "[padic]") {
    const PrimeBasis b2 = make_prime_basis({2});
    const std::vector<Rational> values{{3, 14}};
    const PrimeBasis ext = extend_basis(b2, values);
    CHECK(ext.primes == std::vector<Integer>{2, 3, 7});
    CHECK(ext.m == 42);

    // a composite beyond the trial bound is rejected
    const Integer big1 = 1000003, big2 = 1000033;
    const std::vector<Rational> hard{Rational(1, big1 * big2)};
    CHECK_THROWS_AS(extend_basis(b2, hard, 1000), Error);
    // a prime beyond the trial bound is picked up by the primality check
    const std::vector<Rational> ok{Rational(1, big1)};
    CHECK(extend_basis(b2, ok, 1000).primes == std::vector<Integer>{2, big1});
}

TEST_CASE("primality helper", "[padic]") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(is_prime(Integer("32416190071")));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(1000003ll * 1000033ll));
    CHECK_THROWS_AS(make_prime_basis({4}), Error);
}
