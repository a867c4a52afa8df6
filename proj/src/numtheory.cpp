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

#include "freetrace/numtheory.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace freetrace::nt {

namespace {

Int powm(const Int& b, const Int& e, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int x = powm(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // deterministic for n < 2^64 with the 12 smallest prime bases
        for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
            if (miller_rabin_witness(n, a, d, s)) return false;
        }
        return true;
    }
    static gmp_randclass rng(gmp_randinit_default);
    static bool seeded = [] {
        rng.seed(0x5eedu);
        return true;
    }();
    (void)seeded;
    for (int round = 0; round < 64; ++round) {
        Int a = rng.get_z_range(n - 3) + 2;
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

bool is_mersenne_prime(const Int& p) {
    if (p < 3) return false;
    Int t = p + 1;
    unsigned long l = mpz_scan1(t.get_mpz_t(), 0);
    if (t != (Int(1) << l)) return false;
    return is_probable_prime(Int(static_cast<unsigned long>(l))) && is_probable_prime(p);
}

namespace {

// Brent's cycle-finding variant of Pollard rho. Returns a non-trivial
// factor of n (not necessarily prime), or 0 when the iteration budget
// is exhausted. n must be odd, composite, > 1.
Int pollard_rho_brent(const Int& n, std::uint64_t& budget) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), 3)) return 3;
    for (unsigned c = 1; budget > 0; ++c) {
        Int x = 2, y = 2, q = 1, g = 1, ys = y;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * ((x > y) ? x - y : y - x) % n;
                    --budget;
                }
                g = gcd(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            // backtrack to the first collision
            g = 1;
            while (g == 1 && budget > 0) {
                ys = (ys * ys + c) % n;
                g = gcd((x > ys) ? x - ys : ys - x, n);
                --budget;
            }
        }
        if (g > 1 && g < n) return g;
        // cycle degenerated; retry with the next polynomial increment
    }
    return 0;
}

void multiply_in(std::map<Int, unsigned>& acc, const Int& p, unsigned e) { acc[p] += e; }

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 1000000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

// Fully factor m (odd part after trial division) into acc.
void factor_rec(Int m, std::map<Int, unsigned>& acc, std::uint64_t& budget) {
    if (m == 1) return;
    if (is_probable_prime(m)) {
        multiply_in(acc, m, 1);
        return;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
        // reduce to the root; keeps rho away from p^k inputs it handles badly
        for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                std::map<Int, unsigned> sub;
                factor_rec(root, sub, budget);
                for (auto& [p, e] : sub) multiply_in(acc, p, e * static_cast<unsigned>(k));
                return;
            }
        }
    }
    Int d = pollard_rho_brent(m, budget);
    if (d == 0) throw FactorizationTimeout("rho budget exhausted on " + m.get_str());
    factor_rec(d, acc, budget);
    factor_rec(m / d, acc, budget);
}

}  // namespace

Factored factorize(const Int& n, const std::vector<Int>& hints, std::uint64_t rho_budget) {
    if (n < 1) throw Error("factorize expects n >= 1, got " + n.get_str());
    Factored out;
    out.n = n;
    if (n == 1) return out;

    std::map<Int, unsigned> acc;
    Int m = n;
    for (const Int& h : hints) {
        if (!is_probable_prime(h)) throw HintNotPrime(h.get_str());
        if (!mpz_divisible_p(n.get_mpz_t(), h.get_mpz_t()))
            throw HintNotDivisor(h.get_str() + " does not divide " + n.get_str());
        while (mpz_divisible_p(m.get_mpz_t(), h.get_mpz_t())) {
            m /= h;
            multiply_in(acc, h, 1);
        }
    }

    // trial division by sieved primes up to 10^6
    const std::vector<std::uint32_t>& primes = small_primes();
    bool known_composite = false;
    for (std::uint32_t p : primes) {
        if (m == 1) break;
        Int psq = Int(p) * p;
        if (psq > m) {
            // remainder is prime (all smaller primes exhausted)
            multiply_in(acc, m, 1);
            m = 1;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            multiply_in(acc, Int(p), e);
            known_composite = false;
        }
        // after stripping a factor, a primality test often ends the scan early
        if (m > 1 && !known_composite) {
            if (is_probable_prime(m)) {
                multiply_in(acc, m, 1);
                m = 1;
                break;
            }
            known_composite = true;
        }
    }
    if (m > 1) factor_rec(m, acc, rho_budget);

    out.factors.assign(acc.begin(), acc.end());
    return out;
}

Factored factor_divisor(const Factored& whole, const Int& d) {
    if (d < 1 || !mpz_divisible_p(whole.n.get_mpz_t(), d.get_mpz_t()))
        throw NotDivisor(d.get_str() + " does not divide " + whole.n.get_str());
    Factored out;
    out.n = d;
    Int m = d;
    for (const auto& [p, e] : whole.factors) {
        unsigned k = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++k;
        }
        if (k > 0) out.factors.emplace_back(p, k);
    }
    if (m != 1) throw NotDivisor("divisor has a prime outside the parent factorization");
    return out;
}

int mobius(const Factored& f) {
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

Int euler_phi(const Factored& f) {
    Int r = f.n;
    for (const auto& [p, e] : f.factors) {
        r /= p;
        r *= p - 1;
    }
    return r;
}

Int radical(const Factored& f) {
    Int r = 1;
    for (const auto& [p, e] : f.factors) r *= p;
    return r;
}

std::vector<Int> divisors(const Factored& f) {
    std::vector<Int> out{1};
    for (const auto& [p, e] : f.factors) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Int, int>> squarefree_divisors(const Factored& f) {
    std::vector<std::pair<Int, int>> out{{Int(1), 1}};
    for (const auto& [p, e] : f.factors) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.emplace_back(out[i].first * p, -out[i].second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int ord_mod(const Int& b, const Factored& k) {
    if (k.n < 2) throw NotCoprime("modulus must be >= 2");
    Int bb = b % k.n;
    if (bb < 0) bb += k.n;
    if (gcd(bb, k.n) != 1) throw NotCoprime(b.get_str() + " mod " + k.n.get_str());
    Int phi = euler_phi(k);
    Factored phi_f = factorize(phi);
    Int t = phi;
    for (const auto& [l, e] : phi_f.factors) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = t / l;
            if (mpz_divisible_p(t.get_mpz_t(), l.get_mpz_t()) && powm(bb, cand, k.n) == 1)
                t = cand;
            else
                break;
        }
    }
    return t;
}

std::optional<Int> semiprimitive_j(const Int& p, const Factored& n) {
    if (n.n < 2) throw Error("semiprimitive_j expects n >= 2");
    if (mpz_divisible_p(n.n.get_mpz_t(), p.get_mpz_t())) throw PDividesN(p.get_str());
    Int j = 1;
    std::vector<Int> odd_primes;
    for (const auto& [l, e] : n.factors)
        if (l != 2) odd_primes.push_back(l);
    for (const Int& l : odd_primes) {
        Int t = ord_mod(p, factorize(l));
        if (mpz_odd_p(t.get_mpz_t())) return std::nullopt;
        Int half = t / 2;
        if (powm(p, half, l) != l - 1) return std::nullopt;
        j = lcm(j, half);
    }
    // the lcm can fail to work when the half-orders have mismatched 2-parts
    for (const Int& l : odd_primes)
        if (powm(p, j, l) != l - 1) return std::nullopt;
    return j;
}

MersenneQuartic mersenne_quartic_criterion(const Int& p, unsigned s, unsigned m) {
    if (m < 2) throw Error("mersenne_quartic_criterion expects m > 1");
    MersenneQuartic r;
    if (m == 2) {
        r.kind = MersenneQuartic::Kind::M2;
        r.witness_j = s;
    } else if (s == 1 && m == 4 && is_mersenne_prime(p)) {
        r.kind = MersenneQuartic::Kind::Quartic;
        r.witness_j = 2;
    }
    return r;
}

bool radical_equality(const Int& b, const Int& m) {
    if (b < 2 || m < 2) throw Error("radical_equality expects b, m > 1");
    Factored bm1 = factorize(b - 1);
    for (const auto& [l, e] : bm1.factors)
        if (!mpz_divisible_p(m.get_mpz_t(), l.get_mpz_t())) return false;
    return true;
}

unsigned long v2(const Int& n) {
    if (n == 0) throw Error("v2(0) undefined");
    return mpz_scan1(n.get_mpz_t(), 0);
}

unsigned valuation(const Int& n, const Int& l) {
    Int m = n;
    unsigned v = 0;
    while (m != 0 && mpz_divisible_p(m.get_mpz_t(), l.get_mpz_t())) {
        m /= l;
        ++v;
    }
    return v;
}

namespace {

Int parse_int_token(const std::string& tok, const std::string& line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad integer '" + tok + "' in hints line: " + line);
    return Int(tok);
}

}  // namespace

std::map<Int, std::vector<Int>> parse_hints_file(std::istream& in) {
    std::map<Int, std::vector<Int>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = line;
        if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
        // strip whitespace-only lines
        if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("missing '=' in hints line: " + line);
        std::istringstream lhs(s.substr(0, eq));
        std::string ntok;
        lhs >> ntok;
        std::string extra;
        if (lhs >> extra) throw ParseError("junk before '=' in hints line: " + line);
        Int n = parse_int_token(ntok, line);
        std::vector<Int> primes;
        std::istringstream rhs(s.substr(eq + 1));
        std::string term;
        bool expect_star = false;
        while (rhs >> term) {
            if (expect_star) {
                if (term != "*") throw ParseError("expected '*' in hints line: " + line);
                expect_star = false;
                continue;
            }
            auto caret = term.find('^');
            std::string ptok = (caret == std::string::npos) ? term : term.substr(0, caret);
            if (caret != std::string::npos)
                (void)parse_int_token(term.substr(caret + 1), line);  // exponent, validated only
            primes.push_back(parse_int_token(ptok, line));
            expect_star = true;
        }
        if (primes.empty()) throw ParseError("empty factorization in hints line: " + line);
        out[n] = std::move(primes);
    }
    return out;
}

std::map<Int, std::vector<Int>> load_hints_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open hints file: " + path);
    return parse_hints_file(in);
}

}  // namespace freetrace::nt
