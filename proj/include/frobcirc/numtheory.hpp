// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace frobcirc {

using Residue = std::uint64_t;

/// Largest modulus accepted by the public API. Products of two residues are
/// formed in unsigned 128-bit arithmetic, and sums of two residues must still
/// fit a signed 64-bit integer.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    std::size_t distinct_primes() const { return factors.size(); }
};

/// x ≡ value (mod modulus)
struct Congruence {
    std::uint64_t value = 0;
    std::uint64_t modulus = 1;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

struct Classification {
    std::uint64_t n = 0;
    bool exists = false;
    std::vector<Residue> solutions;  // sorted; empty unless exists
    std::uint64_t graph_count = 0;
};

// Modular helpers. All take m >= 1 and return values in [0, m).
std::uint64_t mod_reduce(std::int64_t x, std::uint64_t m);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; throws PreconditionError if gcd(a, m) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

bool is_prime(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& f);

/// Trial-division factorization; 1 <= n <= kMaxModulus.
Factorization factorize(std::uint64_t n);

/// All x in [0, p^e) with x^2 ≡ r (mod p^e), sorted. Tonelli-Shanks modulo p
/// followed by Hensel lifting. Requires p an odd prime and p ∤ r.
std::vector<std::uint64_t> sqrt_mod_prime_power(std::int64_t r, std::uint64_t p, unsigned e);

/// Combines pairwise-coprime congruences into one modulo their product.
Congruence crt_combine(std::span<const Congruence> parts);

/// Maps a root v of x^2 ≡ -3 (mod n), n odd, to the root of x^2 - x + 1 it induces:
/// (v+1)/2 when v is odd, (n+v+1)/2 when v is even.
Residue generator_from_root(std::uint64_t v, std::uint64_t n);

/// All a in [0, n) with a^2 - a + 1 ≡ 0 (mod n), sorted ascending.
std::vector<Residue> solve_frobenius_eq(std::uint64_t n);

/// Decides whether a 6-valent first-kind Frobenius circulant of order n exists
/// and counts the isomorphism classes. Requires n >= 7.
Classification classify(std::uint64_t n);

/// Hensel step: from a root of x^2 - x + 1 modulo p^s to one modulo p^(s+1).
Residue lift_solution(std::uint64_t p, Residue a_s, unsigned s);

}  // namespace frobcirc
