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

#include "freetrace/gauss.hpp"

#include <algorithm>

namespace freetrace::gauss {

namespace {

std::uint64_t mod_u64(const Int& k, std::uint64_t d) {
    Int r = k % Int(static_cast<unsigned long>(d));
    if (r < 0) r += Int(static_cast<unsigned long>(d));
    return r.get_ui();
}

Int pow_int(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

}  // namespace

const cyc::CycInt& PeriodTable::at(const Int& k) const {
    return values[static_cast<size_t>(mod_u64(k, d))];
}

PeriodBank::PeriodBank(const ff::FieldCtx& ctx, std::uint64_t budget)
    : ctx_(&ctx), budget_(budget) {}

void PeriodBank::fill_traces() {
    if (!traces_.empty()) return;
    std::uint64_t order = ctx_->group_order_u64();
    if (order > budget_)
        throw BudgetExceeded("period enumeration needs " + std::to_string(order) +
                             " steps, budget " + std::to_string(budget_));
    traces_.resize(order);
    ff::PowerWalker walk(*ctx_);
    for (std::uint64_t j = 0; j < order; ++j, walk.advance())
        traces_[j] = static_cast<std::uint32_t>(ctx_->abs_trace(walk.value()));
}

const PeriodTable& PeriodBank::table(const Int& d) {
    if (d < 1 || !d.fits_ulong_p()) throw NotDivisor("period divisor out of range");
    std::uint64_t du = d.get_ui();
    auto it = tables_.find(du);
    if (it != tables_.end()) return it->second;
    if (!mpz_divisible_p((ctx_->field_size() - 1).get_mpz_t(), d.get_mpz_t()))
        throw NotDivisor(d.get_str() + " does not divide the group order");
    fill_traces();
    const unsigned p = static_cast<unsigned>(ctx_->p());
    std::vector<std::vector<Int>> hist(du, std::vector<Int>(p, 0));
    for (std::uint64_t j = 0, rem = 0; j < traces_.size(); ++j) {
        hist[rem][traces_[j]] += 1;
        if (++rem == du) rem = 0;
    }
    PeriodTable t;
    t.d = du;
    t.values.reserve(du);
    for (std::uint64_t k = 0; k < du; ++k) t.values.push_back(cyc::CycInt::from_histogram(p, hist[k]));
    return tables_.emplace(du, std::move(t)).first->second;
}

void PeriodBank::ensure(const std::vector<Int>& ds) {
    for (const Int& d : ds) table(d);
}

const cyc::CycInt& PeriodBank::eta(const Int& d, const Int& k) {
    if (d < 1 || !d.fits_ulong_p()) throw NotDivisor("period divisor out of range");
    std::uint64_t du = d.get_ui();
    if (auto it = tables_.find(du); it != tables_.end()) return it->second.at(k);
    std::uint64_t ku = mod_u64(k, du);
    auto key = std::make_pair(du, ku);
    if (auto it = eta_cache_.find(key); it != eta_cache_.end()) return it->second;
    if (!mpz_divisible_p((ctx_->field_size() - 1).get_mpz_t(), d.get_mpz_t()))
        throw NotDivisor(d.get_str() + " does not divide the group order");
    fill_traces();
    const unsigned p = static_cast<unsigned>(ctx_->p());
    std::vector<Int> hist(p, 0);
    for (std::uint64_t j = ku; j < traces_.size(); j += du) hist[traces_[j]] += 1;
    return eta_cache_.emplace(key, cyc::CycInt::from_histogram(p, hist)).first->second;
}

const std::vector<std::uint32_t>& PeriodBank::subfield_char_traces() {
    if (char_traces_.empty()) {
        const auto& ctx = *ctx_;
        std::uint64_t qm1 = ctx.q().get_ui() - 1;
        ff::FieldElem beta = ctx.pow(ctx.alpha(), ctx.Q());
        ff::FieldElem cur = ctx.one();
        char_traces_.reserve(qm1);
        for (std::uint64_t i = 0; i < qm1; ++i) {
            char_traces_.push_back(static_cast<std::uint32_t>(ctx.subfield_abs_trace(cur)));
            cur = ctx.mul(cur, beta);
        }
    }
    return char_traces_;
}

PeriodTable periods(const ff::FieldCtx& ctx, const Int& d, std::uint64_t budget) {
    PeriodBank bank(ctx, budget);
    return bank.table(d);
}

cyc::CycInt delta(PeriodBank& bank, const Int& N, const Int& k) {
    const auto& ctx = bank.ctx();
    nt::Factored nf = nt::factor_divisor(ctx.group_order(), N);
    cyc::CycInt acc(static_cast<unsigned>(ctx.p()));
    for (const auto& [d, mu] : nt::squarefree_divisors(nf)) {
        const cyc::CycInt& e = bank.eta(d, k);
        if (mu > 0)
            acc += e;
        else
            acc -= e;
    }
    return acc;
}

cyc::CycInt gamma_sum(PeriodBank& bank, const Int& N, const Int& k) {
    const auto& ctx = bank.ctx();
    nt::Factored nf = nt::factor_divisor(ctx.group_order(), N);
    Int co = (ctx.field_size() - 1) / N;
    cyc::CycInt acc(static_cast<unsigned>(ctx.p()));
    for (const auto& [d, mu] : nt::squarefree_divisors(nf)) {
        const cyc::CycInt& e = bank.eta(co * d, k);
        if (mu > 0)
            acc += e;
        else
            acc -= e;
    }
    return acc;
}

cyc::CycInt f_twisted(PeriodBank& bank, const Int& N, const ff::SubLabel& c, const Int& k) {
    const auto& ctx = bank.ctx();
    if (!mpz_divisible_p((ctx.field_size() - 1).get_mpz_t(), N.get_mpz_t()))
        throw NotDivisor(N.get_str() + " does not divide the group order");
    const unsigned p = static_cast<unsigned>(ctx.p());
    std::uint64_t qm1 = ctx.q().get_ui() - 1;
    if (!c.is_zero && c.pow >= qm1) throw NotInSubfield("label exponent out of range");
    cyc::CycInt acc(p);
    for (std::uint64_t i = 0; i < qm1; ++i) {
        cyc::CycInt term = delta(bank, N, ctx.Q() * Int(static_cast<unsigned long>(i)) + k);
        if (c.is_zero) {
            acc += term;
        } else {
            std::uint32_t t = bank.subfield_char_traces()[(i + c.pow) % qm1];
            // conj(chi_q) contributes zeta^(-t)
            acc += term.mul_root((p - t % p) % p);
        }
    }
    return acc;
}

std::optional<Int> least_negation_exponent(const Int& p, const Int& d) {
    if (d <= 2) {
        if (d == 2) return mpz_odd_p(p.get_mpz_t()) ? std::optional<Int>(1) : std::nullopt;
        return std::nullopt;
    }
    if (gcd(p, d) != 1) return std::nullopt;
    Int t = nt::ord_mod(p, nt::factorize(d));
    if (mpz_odd_p(t.get_mpz_t())) return std::nullopt;
    Int half = t / 2;
    Int probe;
    mpz_powm(probe.get_mpz_t(), p.get_mpz_t(), half.get_mpz_t(), d.get_mpz_t());
    if (probe != d - 1) return std::nullopt;
    return half;
}

Int period_closed_form(const ff::FieldCtx& ctx, const Int& d, PeriodForm form) {
    const Int G = ctx.field_size() - 1;
    if (d < 1 || !mpz_divisible_p(G.get_mpz_t(), d.get_mpz_t()))
        throw NotDivisor(d.get_str() + " does not divide the group order");
    const unsigned long p = ctx.p();
    const unsigned sm = ctx.degree();

    switch (form) {
        case PeriodForm::One: {
            if (d != 1) throw HypothesisNotMet("form One needs d = 1");
            return Int(-1);
        }
        case PeriodForm::Two: {
            if (d != 2) throw HypothesisNotMet("form Two needs d = 2");
            if (sm % 2 != 0) throw HypothesisNotMet("form Two needs sm even");
            Int root = pow_int(p, sm / 2);  // p^(sm/2)
            int sign;
            if (p % 4 == 1) {
                sign = -1;  // (-1)^(sm-1) with sm even
            } else {
                // (-1)^(sm-1) * i^sm for p = 3 (mod 4): +1 iff sm = 2 (mod 4)
                sign = (sm % 4 == 2) ? 1 : -1;
            }
            Int num = -1 + sign * root;
            if (mpz_odd_p(num.get_mpz_t())) throw NonIntegerResult("quadratic period");
            return num / 2;
        }
        case PeriodForm::Three: {
            if (d != 3) throw HypothesisNotMet("form Three needs d = 3");
            if (sm % 3 != 0) throw HypothesisNotMet("form Three needs 3 | sm");
            if (p % 3 != 1) throw HypothesisNotMet("form Three needs p = 1 (mod 3)");
            Int root = pow_int(p, sm / 3);  // p^(sm/3)
            Int target = 4 * root;          // = c^2 + 27 d^2
            Int cmax;
            mpz_sqrt(cmax.get_mpz_t(), target.get_mpz_t());
            std::optional<Int> found;
            for (Int c = -cmax; c <= cmax; ++c) {
                if (mpz_fdiv_ui(c.get_mpz_t(), 3) != 1) continue;
                if (mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
                Int rest = target - c * c;
                if (rest < 0 || !mpz_divisible_ui_p(rest.get_mpz_t(), 27)) continue;
                Int dd = rest / 27;
                if (mpz_perfect_square_p(dd.get_mpz_t())) {
                    found = c;
                    break;
                }
            }
            if (!found) throw HypothesisNotMet("no admissible c with 4p^(sm/3) = c^2 + 27d^2");
            Int num = -1 + *found * root;
            if (!mpz_divisible_ui_p(num.get_mpz_t(), 3)) throw NonIntegerResult("cubic period");
            return num / 3;
        }
        case PeriodForm::SemiPrimitive: {
            if (d <= 2) throw HypothesisNotMet("semi-primitive form needs d > 2");
            auto j = least_negation_exponent(Int(p), d);
            if (!j) throw HypothesisNotMet("-1 is not a power of p mod d");
            if (!j->fits_ulong_p()) throw HypothesisNotMet("negation exponent too large");
            unsigned long ju = j->get_ui();
            if (sm % (2 * ju) != 0) throw HypothesisNotMet("2j does not divide sm");
            unsigned long gamma = sm / (2 * ju);
            Int root = pow_int(p, sm / 2);  // r^(1/2)
            Int pj1 = pow_int(p, ju) + 1;
            Int ratio = pj1 / d;  // d | p^j + 1 by construction
            bool case_a = (gamma % 2 == 1) && (p % 2 == 1) && mpz_odd_p(ratio.get_mpz_t());
            Int num;
            if (case_a)
                num = -(root + 1);
            else
                num = ((gamma % 2 == 0) ? -(d - 1) * root : (d - 1) * root) - 1;
            if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t()))
                throw NonIntegerResult("semi-primitive period");
            return num / d;
        }
        case PeriodForm::SubfieldIndex: {
            if (d != ctx.Q()) throw HypothesisNotMet("form SubfieldIndex needs d = Q");
            if (ctx.m() % p != 0) return Int(-1);
            return ctx.q() - 1;
        }
    }
    throw Error("unknown period form");
}

Int delta0_semiprimitive(const ff::FieldCtx& ctx, const Int& n) {
    const unsigned sm = ctx.degree();
    const unsigned long p = ctx.p();
    if (sm % 2 != 0) throw HypothesisNotMet("sm must be even");
    if (ctx.m() < 2) throw HypothesisNotMet("m must exceed 1");
    if (n <= 1) throw HypothesisNotMet("n must exceed 1");
    nt::Factored nf = nt::factor_divisor(ctx.group_order(), n);
    bool power_of_two = nf.factors.size() == 1 && nf.factors[0].first == 2;
    if (power_of_two) throw HypothesisNotMet("n must not be a power of 2");
    auto j = nt::semiprimitive_j(Int(p), nf);
    if (!j) throw HypothesisNotMet("no common negation exponent for the odd primes of n");
    if (!j->fits_ulong_p() || sm % (2 * j->get_ui()) != 0)
        throw HypothesisNotMet("2j does not divide sm");
    unsigned long ju = j->get_ui();
    unsigned long gamma = sm / (2 * ju);

    Int root = pow_int(p, sm / 2);  // q^(m/2) as an integer power of p
    Int phi_n = nt::euler_phi(nf);
    bool n_even = mpz_even_p(n.get_mpz_t());

    Int eta2 = 0;
    if (p != 2) eta2 = period_closed_form(ctx, 2, PeriodForm::Two);

    mpq_class result;
    Int pj1 = pow_int(p, ju) + 1;
    bool case_a = (gamma % 2 == 1) && (p % 2 == 1) && n_even && mpz_odd_p(Int(pj1 / 2).get_mpz_t());
    if (case_a) {
        // -eta2 - (1 + root) (1/2 + phi(n)/n)
        mpq_class frac = mpq_class(1, 2) + mpq_class(phi_n, n);
        frac.canonicalize();
        result = mpq_class(-eta2) - mpq_class(1 + root) * frac;
    } else {
        Int y = (gamma % 2 == 0) ? root : -root;
        mpq_class eps_term(0);
        if (n_even) {
            eps_term = mpq_class(-y - 1, 2) - mpq_class(eta2);
        }
        mpq_class tail = mpq_class((y - 1) * phi_n, n);
        tail.canonicalize();
        result = eps_term + tail;
    }
    result.canonicalize();
    if (result.get_den() != 1) throw NonIntegerResult("semi-primitive delta0");
    return result.get_num();
}

}  // namespace freetrace::gauss
