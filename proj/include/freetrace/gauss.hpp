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

#ifndef FREETRACE_GAUSS_HPP
#define FREETRACE_GAUSS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "freetrace/budget.hpp"
#include "freetrace/cyclotomic.hpp"
#include "freetrace/ffield.hpp"

namespace freetrace::gauss {

using Int = mpz_class;

/// Gaussian periods eta_k^{(d, q^m)} for one divisor d of q^m - 1,
/// indexed by the class k = 0 .. d-1. eta_k is the additive-character sum
/// over the coset alpha^k <alpha^d>; the table rows always sum to -1, and
/// every entry is a rational integer when d | Q.
struct PeriodTable {
    std::uint64_t d = 1;
    std::vector<cyc::CycInt> values;

    const cyc::CycInt& at(const Int& k) const;
};

/// Memoizing period store for one field. Tables are filled from a single
/// cached pass of absolute traces over the alpha-power enumeration; many
/// divisors can be filled in the same sweep.
class PeriodBank {
   public:
    explicit PeriodBank(const ff::FieldCtx& ctx, std::uint64_t budget = default_enum_budget());

    const ff::FieldCtx& ctx() const { return *ctx_; }

    /// Table for d | q^m - 1 (NotDivisor otherwise, BudgetExceeded when the
    /// group is too large to enumerate).
    const PeriodTable& table(const Int& d);

    /// Fill several tables from one pass.
    void ensure(const std::vector<Int>& ds);

    /// Single period eta_k^{(d)}. Computed from the cached trace pass in
    /// O((q^m-1)/d) and memoized per class, so sweeps over many divisors
    /// never materialize full tables for large d.
    const cyc::CycInt& eta(const Int& d, const Int& k);

    /// Tr_{F_q/F_p}(alpha^(Q*i)) for i < q-1; the character exponents that
    /// twist the A^k sums by subfield elements.
    const std::vector<std::uint32_t>& subfield_char_traces();

   private:
    void fill_traces();

    const ff::FieldCtx* ctx_;
    std::uint64_t budget_;
    std::map<std::uint64_t, PeriodTable> tables_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, cyc::CycInt> eta_cache_;
    std::vector<std::uint32_t> traces_;  // abs_trace(alpha^j), j = 0 .. q^m-2
    std::vector<std::uint32_t> char_traces_;
};

/// One-shot period computation (spec'd operation); equivalent to
/// PeriodBank(ctx).table(d) but self-contained.
PeriodTable periods(const ff::FieldCtx& ctx, const Int& d,
                    std::uint64_t budget = default_enum_budget());

/// Delta_k(N) = sum over squarefree d | N of mu(d) eta_k^{(d)}. Depends
/// only on Rad(N).
cyc::CycInt delta(PeriodBank& bank, const Int& N, const Int& k);

/// f_k(N, c, Delta) = sum_{i<q-1} conj(chi_q(alpha^(Q i) c)) Delta_{Qi+k}(N).
cyc::CycInt f_twisted(PeriodBank& bank, const Int& N, const ff::SubLabel& c, const Int& k);

/// Gamma_k(N) = sum over squarefree d | N of mu(d) eta_k^{((q^m-1)/N * d)}.
cyc::CycInt gamma_sum(PeriodBank& bank, const Int& N, const Int& k);

/// Which closed form to apply for eta_0^{(d, q^m)}.
enum class PeriodForm {
    One,            // d = 1: always -1
    Two,            // d = 2, sm even
    Three,          // d = 3, sm = 0 mod 3, p = 1 mod 3, via 4p^(sm/3) = c^2 + 27d^2
    SemiPrimitive,  // d > 2 with -1 a power of p mod d
    SubfieldIndex,  // d = Q
};

/// eta_0^{(d)} in closed form; HypothesisNotMet when the selected form's
/// assumptions fail (callers fall back to periods()). All supported forms
/// produce rational integers; fractional powers of q are integer powers
/// of p by hypothesis.
Int period_closed_form(const ff::FieldCtx& ctx, const Int& d, PeriodForm form);

/// Least j >= 1 with p^j = -1 (mod d), or nullopt.
std::optional<Int> least_negation_exponent(const Int& p, const Int& d);

/// Delta_0(n) in closed form for semi-primitive n (sm even, m > 1, n > 1
/// not a power of two, common negation exponent j for the odd primes of n,
/// 2j | sm). HypothesisNotMet otherwise.
Int delta0_semiprimitive(const ff::FieldCtx& ctx, const Int& n);

}  // namespace freetrace::gauss

#endif
