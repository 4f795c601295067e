// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "frobcirc/error.hpp"

namespace frobcirc {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

void require_modulus(std::uint64_t m) {
    require(m >= 1 && m <= kMaxModulus,
            "modulus " + std::to_string(m) + " outside [1, 2^62]");
}

// Smallest quadratic non-residue modulo an odd prime p.
std::uint64_t smallest_non_residue(std::uint64_t p) {
    for (std::uint64_t z = 2;; ++z) {
        if (pow_mod(z, (p - 1) / 2, p) == p - 1) return z;
    }
}

// Square roots of r modulo an odd prime p, p ∤ r. Empty if r is a non-residue.
std::vector<std::uint64_t> sqrt_mod_prime(std::uint64_t r, std::uint64_t p) {
    if (pow_mod(r, (p - 1) / 2, p) != 1) return {};
    std::uint64_t x = 0;
    if (p % 4 == 3) {
        x = pow_mod(r, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        std::uint64_t q = p - 1;
        unsigned s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        std::uint64_t c = pow_mod(smallest_non_residue(p), q, p);
        std::uint64_t t = pow_mod(r, q, p);
        x = pow_mod(r, (q + 1) / 2, p);
        unsigned m = s;
        while (t != 1) {
            unsigned i = 0;
            std::uint64_t t2 = t;
            while (t2 != 1) {
                t2 = mul_mod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = c;
            for (unsigned k = 0; k + i + 1 < m; ++k) b = mul_mod(b, b, p);
            x = mul_mod(x, b, p);
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            m = i;
        }
    }
    std::vector<std::uint64_t> roots{x, p - x};
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Roots of x^2 ≡ -3 modulo p^e for any prime p (including 2 and 3).
std::vector<std::uint64_t> roots_of_minus_three(std::uint64_t p, unsigned e) {
    if (p == 2) return {};  // x^2 - x + 1 is odd, so nothing downstream can use these
    if (p == 3) {
        if (e == 1) return {0};
        return {};  // x ≡ 0 (mod 3) forces x^2 ≡ 0 (mod 9)
    }
    return sqrt_mod_prime_power(-3, p, e);
}

}  // namespace

std::uint64_t mod_reduce(std::int64_t x, std::uint64_t m) {
    const i128 r = static_cast<i128>(x) % static_cast<i128>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i128>(m) : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) + b) % m);
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : m - (b - a);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
    i128 old_s = 1, s = 0;
    while (r != 0) {
        const i128 q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    if (old_r != 1 && m != 1) {
        precondition_failed(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    }
    i128 inv = old_s % static_cast<i128>(m);
    if (inv < 0) inv += m;
    return static_cast<std::uint64_t>(inv);
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    u128 result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        result *= base;
        require(result <= kMaxModulus, "prime power exceeds 2^62");
    }
    return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto& [p, e] : f.factors) phi *= ipow(p, e - 1) * (p - 1);
    return phi;
}

Factorization factorize(std::uint64_t n) {
    require(n >= 1 && n <= kMaxModulus, "factorize: n must lie in [1, 2^62]");
    Factorization f{n, {}};
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) f.factors.push_back({p, e});
    };
    strip(2);
    for (std::uint64_t d = 3; d <= n / d; d += 2) strip(d);
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

std::vector<std::uint64_t> sqrt_mod_prime_power(std::int64_t r, std::uint64_t p, unsigned e) {
    require(p > 2 && is_prime(p), "sqrt_mod_prime_power: p must be an odd prime");
    require(e >= 1, "sqrt_mod_prime_power: exponent must be >= 1");
    const std::uint64_t pe = ipow(p, e);
    const std::uint64_t target = mod_reduce(r, pe);
    require(target % p != 0, "sqrt_mod_prime_power: r must be coprime to p");

    std::vector<std::uint64_t> roots = sqrt_mod_prime(target % p, p);
    // Hensel: x <- x - (x^2 - r) / (2x), one power of p at a time.
    std::uint64_t mod = p;
    for (unsigned k = 1; k < e; ++k) {
        mod *= p;
        for (auto& x : roots) {
            const std::uint64_t fx = sub_mod(mul_mod(x, x, mod), target % mod, mod);
            const std::uint64_t step = mul_mod(fx, inverse_mod(2 * x % mod, mod), mod);
            x = sub_mod(x, step, mod);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

Congruence crt_combine(std::span<const Congruence> parts) {
    Congruence acc{0, 1};
    for (const auto& part : parts) {
        require_modulus(part.modulus);
        require(std::gcd(acc.modulus, part.modulus) == 1, "crt_combine: moduli are not coprime");
        const u128 combined = static_cast<u128>(acc.modulus) * part.modulus;
        require(combined <= kMaxModulus, "crt_combine: product of moduli exceeds 2^62");
        const std::uint64_t m = static_cast<std::uint64_t>(combined);
        // acc.value + acc.modulus * t ≡ part.value (mod part.modulus)
        const std::uint64_t diff = sub_mod(part.value % part.modulus, acc.value % part.modulus, part.modulus);
        const std::uint64_t t = mul_mod(diff, inverse_mod(acc.modulus % part.modulus, part.modulus), part.modulus);
        acc = {add_mod(acc.value, mul_mod(acc.modulus, t, m), m), m};
    }
    return acc;
}

Residue generator_from_root(std::uint64_t v, std::uint64_t n) {
    require(n % 2 == 1, "generator_from_root: n must be odd");
    v %= n;
    const u128 numerator = (v % 2 == 1) ? static_cast<u128>(v) + 1 : static_cast<u128>(n) + v + 1;
    return static_cast<Residue>((numerator / 2) % n);
}

std::vector<Residue> solve_frobenius_eq(std::uint64_t n) {
    require(n >= 1 && n <= kMaxModulus, "solve_frobenius_eq: n must lie in [1, 2^62]");
    if (n == 1) return {0};
    if (n % 2 == 0) return {};

    const Factorization f = factorize(n);
    std::vector<std::vector<Congruence>> local;
    for (const auto& [p, e] : f.factors) {
        const std::uint64_t pe = ipow(p, e);
        std::vector<Congruence> opts;
        for (auto v : roots_of_minus_three(p, e)) opts.push_back({v, pe});
        if (opts.empty()) return {};
        local.push_back(std::move(opts));
    }

    // Every combination of local roots v, then v -> a.
    std::vector<Residue> out;
    std::vector<std::size_t> pick(local.size(), 0);
    std::vector<Congruence> chosen(local.size());
    while (true) {
        for (std::size_t i = 0; i < local.size(); ++i) chosen[i] = local[i][pick[i]];
        const Congruence v = crt_combine(chosen);
        out.push_back(generator_from_root(v.value, n));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == local[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto a : out) {
        ensure(add_mod(sub_mod(mul_mod(a, a, n), a, n), 1, n) == 0,
               "solve_frobenius_eq produced a non-root for n=" + std::to_string(n));
    }
    return out;
}

Classification classify(std::uint64_t n) {
    require(n >= 7, "classify: n must be at least 7");
    Classification c{n, false, {}, 0};
    if (n % 6 != 1) return c;
    const Factorization f = factorize(n);
    if (euler_phi(f) % 6 != 0) return c;

    auto solutions = solve_frobenius_eq(n);
    if (solutions.empty()) return c;

    const std::size_t l = f.distinct_primes();
    for (const auto& pp : f.factors) {
        ensure(pp.prime % 6 == 1, "classify: prime factor " + std::to_string(pp.prime) + " of a constructible order is not 1 mod 6");
    }
    ensure(solutions.size() == (std::size_t{1} << l), "classify: solution count is not 2^l");
    for (auto a : solutions) {
        const Residue partner = sub_mod(0, mul_mod(a, a, n), n);
        ensure(std::binary_search(solutions.begin(), solutions.end(), partner),
               "classify: solution set not closed under a -> -a^2");
    }
    c.exists = true;
    c.solutions = std::move(solutions);
    c.graph_count = std::uint64_t{1} << (l - 1);
    return c;
}

Residue lift_solution(std::uint64_t p, Residue a_s, unsigned s) {
    require(is_prime(p), "lift_solution: p must be prime");
    require(s >= 1, "lift_solution: level must be >= 1");
    const std::uint64_t ps = ipow(p, s);
    const std::uint64_t next = ipow(p, s + 1);
    a_s %= ps;
    const u128 value = static_cast<u128>(a_s) * a_s - a_s + 1;
    require(value % ps == 0, "lift_solution: a_s is not a root of x^2 - x + 1 modulo p^s");
    const std::uint64_t derivative = (2 * a_s + p - 1) % p;  // 2a_s - 1 mod p
    require(derivative != 0, "lift_solution: 2a_s - 1 is not invertible modulo p");
    const std::uint64_t quotient = static_cast<std::uint64_t>((value / ps) % p);
    const std::uint64_t t = mul_mod(sub_mod(0, quotient, p), inverse_mod(derivative, p), p);
    return static_cast<Residue>(a_s + static_cast<u128>(ps) * t) % next;
}

}  // namespace frobcirc
