#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pamlab/rational.hpp"

namespace pamlab {

/// Miller-Rabin with the standard deterministic witness set; exact for
/// everything below 3.3e24, a strong probable-prime test beyond.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    unsigned long s = lsb(d);
    d >>= s;
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Integer x = powm(Integer(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned long i = 0; i + 1 < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Finite set of primes p_1 < ... < p_k together with their product m.
struct PrimeBasis {
    std::vector<Integer> primes;
    Integer m;

    std::size_t size() const { return primes.size(); }
};

inline PrimeBasis make_prime_basis(std::vector<Integer> primes) {
    if (primes.empty()) fail(errc::invalid_argument, "prime basis must be non-empty");
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    Integer m = 1;
    for (const Integer& p : primes) {
        if (!is_prime(p)) fail(errc::invalid_argument, "not a prime: " + p.str());
        m *= p;
    }
    return PrimeBasis{std::move(primes), std::move(m)};
}

inline PrimeBasis make_prime_basis(std::initializer_list<long> primes) {
    std::vector<Integer> v(primes.begin(), primes.end());
    return make_prime_basis(std::move(v));
}

/// Multiplicity of p in a nonzero integer.
inline Weight multiplicity(Integer n, const Integer& p) {
    if (n == 0) fail(errc::invalid_argument, "multiplicity of zero");
    if (n < 0) n = -n;
    Weight k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// ||x||_p = -alpha where x = p^alpha * r/s with p dividing neither r nor s.
inline Weight padic_weight(const Rational& x, const Integer& p) {
    if (x == 0) fail(errc::zero_has_no_weight, "||0||_p is undefined");
    return multiplicity(denominator(x), p) - multiplicity(numerator(x), p);
}

/// Per-prime weights over a basis. m_weight is empty exactly when some prime
/// outside the basis divides the denominator (residual), which stands for the
/// +infinity value.
struct WeightVector {
    std::vector<Weight> per_prime;
    bool residual = false;
    std::optional<Weight> m_weight;

    bool infinite() const { return !m_weight.has_value(); }
};

inline WeightVector m_weight_vector(const Rational& x, const PrimeBasis& basis) {
    if (x == 0) fail(errc::zero_has_no_weight, "||0||_m is undefined");
    WeightVector w;
    w.per_prime.reserve(basis.size());
    Integer residue = denominator(x);
    for (const Integer& p : basis.primes) {
        w.per_prime.push_back(padic_weight(x, p));
        while (residue % p == 0) residue /= p;
    }
    w.residual = residue != 1;
    if (!w.residual) w.m_weight = *std::max_element(w.per_prime.begin(), w.per_prime.end());
    return w;
}

/// Convenience form: empty optional means +infinity.
inline std::optional<Weight> m_weight(const Rational& x, const PrimeBasis& basis) {
    return m_weight_vector(x, basis).m_weight;
}

/// A lower bound b such that every x in [0,1] with finite ||x||_m < a has
/// ||x||_p >= b for every prime p. Computed from the largest alpha with
/// 2^alpha <= p_k^(k*a), by integer comparison only.
inline Weight weight_lower_bound(Weight a, const PrimeBasis& basis) {
    if (a < 1) fail(errc::invalid_argument, "bound parameter must be >= 1");
    const Integer cap = int_pow(basis.primes.back(),
                                static_cast<unsigned long>(a) * basis.size());
    return -static_cast<Weight>(msb(cap)); // msb(cap) is the largest alpha with 2^alpha <= cap
}

/// All rationals x in [0,1] with finite ||x||_m < a; they are exactly the
/// fractions j/m^(a-1).
inline std::vector<Rational> enumerate_bounded_weight(Weight a, const PrimeBasis& basis,
                                                      unsigned long size_cap = 1000000) {
    if (a < 1) fail(errc::invalid_argument, "bound parameter must be >= 1");
    const Integer q = int_pow(basis.m, static_cast<unsigned long>(a - 1));
    if (q > size_cap)
        fail(errc::enumeration_too_large,
             "would enumerate " + q.str() + " + 1 candidates (cap " + std::to_string(size_cap) + ")");
    std::vector<Rational> out;
    for (Integer j = 0; j <= q; ++j) {
        Rational x(j, q);
        if (x == 0 || *m_weight(x, basis) < a) out.push_back(std::move(x));
    }
    return out;
}

/// Trial division up to `bound`, with a primality check on the leftover.
/// Returns the prime factors; throws when a composite leftover cannot be split.
inline std::vector<Integer> prime_factors(Integer n, unsigned long bound = 1000000) {
    std::vector<Integer> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Integer p = 2; p * p <= n && p <= bound; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) {
        if (!is_prime(n))
            fail(errc::unfactorable_coefficient,
                 "cofactor " + n.str() + " is composite and exceeds the trial bound");
        out.push_back(n);
    }
    return out;
}

/// Extends a basis with every prime of the given values (numerators and
/// denominators), so that all of them get finite m-weights.
inline PrimeBasis extend_basis(const PrimeBasis& basis, std::span<const Rational> values,
                               unsigned long trial_bound = 1000000) {
    std::set<Integer> primes(basis.primes.begin(), basis.primes.end());
    for (const Rational& v : values) {
        if (v == 0) continue;
        for (const Integer& p : prime_factors(numerator(v), trial_bound)) primes.insert(p);
        for (const Integer& p : prime_factors(denominator(v), trial_bound)) primes.insert(p);
    }
    return make_prime_basis(std::vector<Integer>(primes.begin(), primes.end()));
}

inline PrimeBasis basis_for(std::span<const Rational> values, unsigned long trial_bound = 1000000) {
    std::set<Integer> primes;
    for (const Rational& v : values) {
        if (v == 0) continue;
        for (const Integer& p : prime_factors(numerator(v), trial_bound)) primes.insert(p);
        for (const Integer& p : prime_factors(denominator(v), trial_bound)) primes.insert(p);
    }
    if (primes.empty()) primes.insert(2); // degenerate all-integer input; any prime works
    return make_prime_basis(std::vector<Integer>(primes.begin(), primes.end()));
}

} // namespace pamlab
