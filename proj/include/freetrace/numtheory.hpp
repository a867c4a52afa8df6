/*
   Copyright 2026 The freetrace authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FREETRACE_NUMTHEORY_HPP
#define FREETRACE_NUMTHEORY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freetrace/errors.hpp"

namespace freetrace::nt {

using Int = mpz_class;

/// A positive integer together with its complete prime factorization,
/// primes strictly ascending, exponents >= 1. The unit 1 has no factors.
struct Factored {
    Int n{1};
    std::vector<std::pair<Int, unsigned>> factors;

    bool is_one() const { return factors.empty(); }
    unsigned num_primes() const { return static_cast<unsigned>(factors.size()); }
    bool divides(const Int& m) const { return mpz_divisible_p(m.get_mpz_t(), n.get_mpz_t()) != 0; }
};

/// Miller-Rabin: deterministic witness set below 2^64, 64 pseudo-random
/// rounds above (bases drawn from a fixed-seed generator, so results are
/// reproducible).
bool is_probable_prime(const Int& n);

/// Returns true iff p = 2^l - 1 with l prime and p itself prime.
bool is_mersenne_prime(const Int& p);

inline constexpr std::uint64_t kDefaultRhoBudget = 1ull << 26;

/// Complete factorization: trial division to 10^6, then Brent's variant of
/// Pollard rho under an iteration budget. Hints are candidate prime factors;
/// each is checked for primality and divisibility before being used.
/// Throws FactorizationTimeout if the rho budget runs out, HintNotPrime /
/// HintNotDivisor on bad hints.
Factored factorize(const Int& n, const std::vector<Int>& hints = {},
                   std::uint64_t rho_budget = kDefaultRhoBudget);

/// Factorization of a divisor d of whole.n, reusing the known primes.
/// Throws NotDivisor if d does not divide whole.n.
Factored factor_divisor(const Factored& whole, const Int& d);

int mobius(const Factored& f);
Int euler_phi(const Factored& f);
Int radical(const Factored& f);

/// All positive divisors, ascending.
std::vector<Int> divisors(const Factored& f);

/// The squarefree divisors only, as (d, mobius(d)) pairs, ascending.
/// Delta/Gamma style sums need nothing else.
std::vector<std::pair<Int, int>> squarefree_divisors(const Factored& f);

/// Least t >= 1 with b^t = 1 (mod k.n). Requires gcd(b, k.n) = 1 and
/// k.n >= 2 (NotCoprime otherwise).
Int ord_mod(const Int& b, const Factored& k);

/// Least j >= 1 with p^j = -1 (mod l) for every odd prime l dividing n,
/// or nullopt when no such j exists. Vacuously j = 1 when n is a power
/// of two. Requires p prime, n >= 2, p not dividing n (PDividesN).
std::optional<Int> semiprimitive_j(const Int& p, const Factored& n);

/// Existence of j with p^j = -1 (mod Rad((q^m - 1)/(q - 1))) for q = p^s:
/// only m = 2 (witness j = s) or q a Mersenne prime with m = 4 (witness
/// j = 2) qualify.
struct MersenneQuartic {
    enum class Kind { M2, Quartic, None } kind = Kind::None;
    Int witness_j{0};
};
MersenneQuartic mersenne_quartic_criterion(const Int& p, unsigned s, unsigned m);

/// True iff Rad(b^m - 1) = Rad((b^m - 1)/(b - 1)), decided by the
/// equivalent test that every prime factor of b - 1 divides m.
bool radical_equality(const Int& b, const Int& m);

/// 2-adic valuation.
unsigned long v2(const Int& n);

/// Exponent of prime l in n.
unsigned valuation(const Int& n, const Int& l);

/// Hints file: one line per integer, `n = p1^e1 * p2^e2 * ...`, decimal,
/// `#` comments and blank lines allowed. Returns the claimed prime lists;
/// verification happens inside factorize().
std::map<Int, std::vector<Int>> parse_hints_file(std::istream& in);
std::map<Int, std::vector<Int>> load_hints_file(const std::string& path);

}  // namespace freetrace::nt

#endif
