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

#ifndef FREETRACE_ORACLE_HPP
#define FREETRACE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "freetrace/budget.hpp"
#include "freetrace/ffield.hpp"

namespace freetrace::oracle {

using Int = mpz_class;

/// Structured result of one count. `method` is "oracle" or "formula";
/// formula results carry the branch that produced them.
struct CountReport {
    unsigned long p = 0;
    unsigned s = 1;
    unsigned m = 1;
    Int N{0};
    std::string c_label;
    std::string quantity;  // "Z" | "P" | "M" | "WH" | "I"
    std::string method;    // "oracle" | "formula"
    std::string branch;    // formula branch tag, empty for oracle counts
    Int value{0};
};

CountReport make_report(const ff::FieldCtx& ctx, const Int& N, const std::string& c_label,
                        const std::string& quantity, const std::string& method,
                        const std::string& branch, const Int& value);

/// Number of N-free elements with relative trace c, by exhaustive
/// enumeration of alpha-powers (the discrete log makes N-freeness a gcd
/// test). NotDivisor / NotInSubfield / BudgetExceeded.
CountReport count_z_oracle(const ff::FieldCtx& ctx, const Int& N, const ff::SubLabel& c,
                           std::uint64_t budget = default_enum_budget());

/// Number of elements of multiplicative order exactly N with trace c.
CountReport count_p_oracle(const ff::FieldCtx& ctx, const Int& N, const ff::SubLabel& c,
                           std::uint64_t budget = default_enum_budget());

/// Number of elements of order N inside an arbitrary subset given by a
/// predicate.
Int count_m_subset(const ff::FieldCtx& ctx, const Int& N,
                   const std::function<bool(const ff::FieldElem&)>& predicate,
                   std::uint64_t budget = default_enum_budget());

/// Hamming weight of (Tr(beta), Tr(beta alpha^N), ..., Tr(beta alpha^((n-1)N))),
/// n = (q^m-1)/N.
Int hamming_weight(const ff::FieldCtx& ctx, const Int& N, const ff::FieldElem& beta,
                   std::uint64_t budget = default_enum_budget());

/// Number of monic irreducible polynomials of degree m over the field of
/// q_ctx whose trace (= -coefficient of x^(m-1), the root sum) equals c.
/// Enumerates all q^m monic polynomials; BudgetExceeded when q^(m+1) is
/// out of budget.
Int count_irreducible_trace_oracle(const ff::FieldCtx& q_ctx, unsigned m, const ff::FieldElem& c,
                                   std::uint64_t budget = default_enum_budget());

/// Evaluates the Moebius characteristic sum for N-freeness through the
/// discrete log of x (sum of mu(d) over d | gcd(N, log x)) and reports
/// whether it equals 1. Must agree with FieldCtx::is_nfree everywhere.
bool nfree_characteristic_check(const ff::FieldCtx& ctx, const Int& N, const ff::FieldElem& x,
                                std::uint64_t budget = default_enum_budget());

/// One full enumeration pass, bucketing counts by gcd(j, q^m-1) and trace
/// label. Serves whole families of Z/P oracle queries on one field; the
/// per-query operations above stay independent single sweeps.
class OracleSweep {
   public:
    explicit OracleSweep(const ff::FieldCtx& ctx, std::uint64_t budget = default_enum_budget());

    const ff::FieldCtx& ctx() const { return *ctx_; }

    /// label index: 0 for trace zero, 1 + i for pow:i.
    std::uint64_t z_count(const Int& N, std::uint64_t label_index) const;
    std::uint64_t p_count(const Int& N, std::uint64_t label_index) const;
    std::uint64_t num_labels() const { return q_minus_1_ + 1; }

   private:
    const ff::FieldCtx* ctx_;
    std::uint64_t group_;
    std::uint64_t q_minus_1_;
    std::vector<std::uint64_t> gcds_;                       // sorted distinct gcd values
    std::vector<std::vector<std::uint64_t>> counts_;        // [gcd index][label index]
};

}  // namespace freetrace::oracle

#endif
