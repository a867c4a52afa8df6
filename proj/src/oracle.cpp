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

#include "freetrace/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "freetrace/numtheory.hpp"

namespace freetrace::oracle {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t checked_group(const ff::FieldCtx& ctx, std::uint64_t budget, const char* what) {
    std::uint64_t order = ctx.group_order_u64();
    if (order > budget)
        throw BudgetExceeded(std::string(what) + " needs " + std::to_string(order) +
                             " steps, budget " + std::to_string(budget));
    return order;
}

std::uint64_t require_divisor_u64(const ff::FieldCtx& ctx, const Int& N) {
    if (N < 1 || !mpz_divisible_p((ctx.field_size() - 1).get_mpz_t(), N.get_mpz_t()))
        throw NotDivisor(N.get_str() + " does not divide " + (ctx.field_size() - 1).get_str());
    if (!N.fits_ulong_p()) throw NotDivisor("divisor out of enumeration range");
    return N.get_ui();
}

}  // namespace

CountReport make_report(const ff::FieldCtx& ctx, const Int& N, const std::string& c_label,
                        const std::string& quantity, const std::string& method,
                        const std::string& branch, const Int& value) {
    CountReport r;
    r.p = ctx.p();
    r.s = ctx.s();
    r.m = ctx.m();
    r.N = N;
    r.c_label = c_label;
    r.quantity = quantity;
    r.method = method;
    r.branch = branch;
    r.value = value;
    return r;
}

CountReport count_z_oracle(const ff::FieldCtx& ctx, const Int& N, const ff::SubLabel& c,
                           std::uint64_t budget) {
    std::uint64_t Nu = require_divisor_u64(ctx, N);
    std::uint64_t order = checked_group(ctx, budget, "Z oracle");
    // validate label range
    (void)ctx.subfield_element(c);
    std::uint64_t count = 0;
    ff::PowerWalker walk(ctx);
    for (std::uint64_t j = 0; j < order; ++j, walk.advance()) {
        if (gcd_u64(j, Nu) != 1) continue;
        if (ctx.subfield_label(ctx.rel_trace(walk.value())) == c) ++count;
    }
    return make_report(ctx, N, c.str(), "Z", "oracle", "", Int(static_cast<unsigned long>(count)));
}

CountReport count_p_oracle(const ff::FieldCtx& ctx, const Int& N, const ff::SubLabel& c,
                           std::uint64_t budget) {
    std::uint64_t Nu = require_divisor_u64(ctx, N);
    std::uint64_t order = checked_group(ctx, budget, "P oracle");
    (void)ctx.subfield_element(c);
    std::uint64_t target_gcd = order / Nu;  // ord(alpha^j) = N  <=>  gcd(j, order) = order/N
    std::uint64_t count = 0;
    ff::PowerWalker walk(ctx);
    for (std::uint64_t j = 0; j < order; ++j, walk.advance()) {
        if (gcd_u64(j, order) != target_gcd) continue;
        if (ctx.subfield_label(ctx.rel_trace(walk.value())) == c) ++count;
    }
    return make_report(ctx, N, c.str(), "P", "oracle", "", Int(static_cast<unsigned long>(count)));
}

Int count_m_subset(const ff::FieldCtx& ctx, const Int& N,
                   const std::function<bool(const ff::FieldElem&)>& predicate,
                   std::uint64_t budget) {
    std::uint64_t Nu = require_divisor_u64(ctx, N);
    std::uint64_t order = checked_group(ctx, budget, "M oracle");
    std::uint64_t target_gcd = order / Nu;
    std::uint64_t count = 0;
    ff::PowerWalker walk(ctx);
    for (std::uint64_t j = 0; j < order; ++j, walk.advance()) {
        if (gcd_u64(j, order) != target_gcd) continue;
        if (predicate(walk.value())) ++count;
    }
    return Int(static_cast<unsigned long>(count));
}

Int hamming_weight(const ff::FieldCtx& ctx, const Int& N, const ff::FieldElem& beta,
                   std::uint64_t budget) {
    std::uint64_t Nu = require_divisor_u64(ctx, N);
    std::uint64_t order = checked_group(ctx, budget, "Hamming weight");
    std::uint64_t n = order / Nu;
    if (ctx.is_zero(beta)) return 0;
    std::uint64_t weight = 0;
    ff::FieldElem step = ctx.pow(ctx.alpha(), Int(static_cast<unsigned long>(Nu)));
    ff::FieldElem cur = beta;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!ctx.is_zero(ctx.rel_trace(cur))) ++weight;
        cur = ctx.mul(cur, step);
    }
    return Int(static_cast<unsigned long>(weight));
}

namespace {

// minimal polynomial arithmetic over the field of q_ctx (coefficients are
// FieldElems), little-endian, used only by the irreducibility oracle
using Poly = std::vector<ff::FieldElem>;

void poly_trim(const ff::FieldCtx& F, Poly& a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

Poly poly_mulmod(const ff::FieldCtx& F, const Poly& a, const Poly& b, const Poly& f) {
    Poly r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    // f is monic of degree deg
    size_t deg = f.size() - 1;
    while (r.size() > deg) {
        ff::FieldElem c = r.back();
        r.pop_back();
        if (!F.is_zero(c)) {
            size_t off = r.size() - deg;
            for (size_t j = 0; j < deg; ++j)
                r[off + j] = F.sub(r[off + j], F.mul(c, f[j]));
        }
    }
    r.resize(deg, F.zero());
    return r;
}

Poly poly_powmod(const ff::FieldCtx& F, Poly base, Int e, const Poly& f) {
    Poly r(f.size() - 1, F.zero());
    r[0] = F.one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(F, r, base, f);
        e >>= 1;
        if (e > 0) base = poly_mulmod(F, base, base, f);
    }
    return r;
}

Poly poly_gcd(const ff::FieldCtx& F, Poly a, Poly b) {
    poly_trim(F, a);
    poly_trim(F, b);
    while (!b.empty()) {
        // a mod b
        ff::FieldElem lead_inv = F.pow(b.back(), F.field_size() - 2);
        while (a.size() >= b.size() && !a.empty()) {
            ff::FieldElem c = F.mul(a.back(), lead_inv);
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = F.sub(a[off + j], F.mul(c, b[j]));
            poly_trim(F, a);
        }
        std::swap(a, b);
    }
    return a;
}

bool poly_irreducible(const ff::FieldCtx& F, const Poly& f, const nt::Factored& deg_factors) {
    size_t m = f.size() - 1;
    if (m == 1) return true;
    Poly x(m, F.zero());
    x[1] = F.one();
    const Int& q = F.field_size();
    // x^(q^m) == x (mod f)
    Poly t = x;
    for (size_t i = 0; i < m; ++i) t = poly_powmod(F, t, q, f);
    if (t != x) return false;
    for (const auto& [l, e] : deg_factors.factors) {
        size_t k = m / l.get_ui();
        Poly y = x;
        for (size_t i = 0; i < k; ++i) y = poly_powmod(F, y, q, f);
        // gcd(y - x, f)
        Poly diff = y;
        diff[1] = F.sub(diff[1], F.one());
        poly_trim(F, diff);
        if (diff.empty()) return false;
        Poly g = poly_gcd(F, diff, f);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

Int count_irreducible_trace_oracle(const ff::FieldCtx& q_ctx, unsigned m, const ff::FieldElem& c,
                                   std::uint64_t budget) {
    const Int& q = q_ctx.field_size();
    Int cost;
    mpz_pow_ui(cost.get_mpz_t(), q.get_mpz_t(), m + 1);
    if (!cost.fits_ulong_p() || cost.get_ui() > budget)
        throw BudgetExceeded("irreducible enumeration q^(m+1) = " + cost.get_str());
    if (m == 0) throw Error("degree must be positive");

    nt::Factored deg_factors = nt::factorize(Int(m));
    ff::FieldElem want = q_ctx.neg(c);  // trace c  <=>  coefficient of x^(m-1) is -c

    // enumerate monic f = x^m + a_{m-1} x^(m-1) + ... + a_0 by counter digits
    std::uint64_t total = 1;
    std::uint64_t qu = q.get_ui();
    for (unsigned i = 0; i < m; ++i) total *= qu;
    const unsigned digits = q_ctx.degree();
    const unsigned long p = q_ctx.p();

    std::uint64_t count = 0;
    std::vector<std::uint64_t> idx(m, 0);
    Poly f(m + 1, q_ctx.zero());
    f[m] = q_ctx.one();
    auto set_coeff = [&](unsigned pos, std::uint64_t e) {
        ff::FieldElem v = q_ctx.zero();
        for (unsigned d = 0; d < digits; ++d) {
            v.c[d] = static_cast<std::uint32_t>(e % p);
            e /= p;
        }
        f[pos] = v;
    };
    for (unsigned i = 0; i < m; ++i) set_coeff(i, 0);
    for (std::uint64_t counter = 0;; ++counter) {
        if (f[m - 1] == want && poly_irreducible(q_ctx, f, deg_factors)) ++count;
        // increment the coefficient counter
        unsigned pos = 0;
        while (pos < m) {
            if (++idx[pos] < qu) {
                set_coeff(pos, idx[pos]);
                break;
            }
            idx[pos] = 0;
            set_coeff(pos, 0);
            ++pos;
        }
        if (pos == m) break;
    }
    return Int(static_cast<unsigned long>(count));
}

bool nfree_characteristic_check(const ff::FieldCtx& ctx, const Int& N, const ff::FieldElem& x,
                                std::uint64_t budget) {
    std::uint64_t Nu = require_divisor_u64(ctx, N);
    if (ctx.is_zero(x)) throw ZeroElement("nfree_characteristic_check(0)");
    std::uint64_t order = checked_group(ctx, budget, "characteristic check");
    // discrete log by enumeration
    std::uint64_t j = 0;
    ff::PowerWalker walk(ctx);
    while (walk.value() != x) {
        walk.advance();
        if (++j >= order) throw Error("element not in the cyclic group");
    }
    // sum of mu(d) over d | gcd(N, j)
    std::uint64_t g = gcd_u64(j, Nu);
    nt::Factored gf = nt::factor_divisor(ctx.group_order(), Int(static_cast<unsigned long>(g)));
    long sum = 0;
    for (const auto& [d, mu] : nt::squarefree_divisors(gf)) sum += mu;
    return sum == 1;
}

OracleSweep::OracleSweep(const ff::FieldCtx& ctx, std::uint64_t budget) : ctx_(&ctx) {
    group_ = checked_group(ctx, budget, "oracle sweep");
    q_minus_1_ = ctx.q().get_ui() - 1;

    // distinct gcd values are exactly the divisors of the group order
    for (const Int& d : nt::divisors(ctx.group_order())) gcds_.push_back(d.get_ui());
    std::sort(gcds_.begin(), gcds_.end());
    counts_.assign(gcds_.size(), std::vector<std::uint64_t>(q_minus_1_ + 1, 0));

    auto gcd_index = [this](std::uint64_t g) {
        return static_cast<size_t>(std::lower_bound(gcds_.begin(), gcds_.end(), g) - gcds_.begin());
    };

    ff::PowerWalker walk(ctx);
    for (std::uint64_t j = 0; j < group_; ++j, walk.advance()) {
        ff::SubLabel lab = ctx.subfield_label(ctx.rel_trace(walk.value()));
        std::uint64_t li = lab.is_zero ? 0 : 1 + lab.pow;
        counts_[gcd_index(gcd_u64(j, group_))][li] += 1;
    }
}

std::uint64_t OracleSweep::z_count(const Int& N, std::uint64_t label_index) const {
    std::uint64_t Nu = require_divisor_u64(*ctx_, N);
    std::uint64_t total = 0;
    for (size_t i = 0; i < gcds_.size(); ++i)
        if (gcd_u64(gcds_[i], Nu) == 1) total += counts_[i][label_index];
    return total;
}

std::uint64_t OracleSweep::p_count(const Int& N, std::uint64_t label_index) const {
    std::uint64_t Nu = require_divisor_u64(*ctx_, N);
    std::uint64_t target = group_ / Nu;
    auto it = std::lower_bound(gcds_.begin(), gcds_.end(), target);
    if (it == gcds_.end() || *it != target) return 0;
    return counts_[static_cast<size_t>(it - gcds_.begin())][label_index];
}

}  // namespace freetrace::oracle
