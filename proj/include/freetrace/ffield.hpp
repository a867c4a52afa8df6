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

#ifndef FREETRACE_FFIELD_HPP
#define FREETRACE_FFIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "freetrace/errors.hpp"
#include "freetrace/numtheory.hpp"

namespace freetrace::ff {

using Int = mpz_class;

/// Element of F_{p^(s*m)} as a little-endian coefficient vector in the
/// power basis of the modulus, each coordinate in [0, p).
struct FieldElem {
    std::vector<std::uint32_t> c;
    bool operator==(const FieldElem&) const = default;
};

/// Label of an element of the intermediate subfield F_q: zero, or the
/// exponent i with value alpha^(Q*i), 0 <= i < q-1.
struct SubLabel {
    bool is_zero = true;
    std::uint64_t pow = 0;

    static SubLabel zero() { return {}; }
    static SubLabel power(std::uint64_t i) { return {false, i}; }
    bool operator==(const SubLabel&) const = default;
    std::string str() const { return is_zero ? "0" : "pow:" + std::to_string(pow); }
};

/// F_{q^m} with q = p^s, realized once and for all as F_p[x]/(modulus) of
/// degree s*m. The intermediate F_q is the unique subfield of degree s,
/// membership tested by y^q = y. Immutable after construction (the lazy
/// subfield label table is built under a lock), so contexts are safe to
/// share across threads.
class FieldCtx {
   public:
    /// Deterministic construction: modulus found by lexicographic scan of
    /// monic polynomials starting at the seed offset, alpha as the first
    /// element in coefficient-counter order whose order is q^m - 1.
    FieldCtx(unsigned long p, unsigned s, unsigned m, unsigned long seed = 0);

    unsigned long p() const { return p_; }
    unsigned s() const { return s_; }
    unsigned m() const { return m_; }
    unsigned degree() const { return n_; }
    const Int& q() const { return q_; }
    const Int& field_size() const { return qm_; }
    const nt::Factored& group_order() const { return group_order_; }
    const Int& Q() const { return Q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    const FieldElem& alpha() const { return alpha_; }
    unsigned long seed() const { return seed_; }

    FieldElem zero() const { return FieldElem{std::vector<std::uint32_t>(n_, 0)}; }
    FieldElem one() const;
    FieldElem from_int(const Int& t) const;  // t * 1

    bool is_zero(const FieldElem& a) const;
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(const FieldElem& a, const Int& e) const;
    FieldElem pow_u64(const FieldElem& a, std::uint64_t e) const;

    /// Tr down to F_p, as the canonical residue. Evaluated through a
    /// precomputed linear form.
    unsigned long abs_trace(const FieldElem& x) const;

    /// Tr_{F_{q^m}/F_q}, lands in the subfield (y^q = y).
    FieldElem rel_trace(const FieldElem& x) const;

    /// Tr_{F_q/F_p} of a subfield element, as a residue mod p.
    unsigned long subfield_abs_trace(const FieldElem& y) const;

    bool in_subfield(const FieldElem& y) const;

    Int element_order(const FieldElem& x) const;

    /// True iff x^((q^m-1)/l) != 1 for every prime l | N. Throws
    /// NotDivisor when N does not divide q^m - 1, ZeroElement on x = 0.
    bool is_nfree(const FieldElem& x, const Int& N) const;

    SubLabel subfield_label(const FieldElem& c) const;
    FieldElem subfield_element(const SubLabel& label) const;

    /// Same field, same modulus, alpha replaced by alpha^k
    /// (gcd(k, q^m-1) = 1). Counts must not depend on this choice.
    FieldCtx rebase_alpha(const Int& k) const;

    /// Group order as u64; Error if it does not fit.
    std::uint64_t group_order_u64() const;

    std::string describe() const;

    FieldCtx(const FieldCtx& o);
    FieldCtx& operator=(const FieldCtx& o);

   private:
    FieldCtx() = default;
    void check(const FieldElem& a) const;
    void build_tables();
    const std::map<std::vector<std::uint32_t>, std::uint64_t>& label_map() const;

    unsigned long p_ = 0;
    unsigned s_ = 0, m_ = 0, n_ = 0;
    unsigned long seed_ = 0;
    Int q_, qm_, Q_;
    nt::Factored group_order_;
    std::vector<std::uint32_t> modulus_;  // little-endian, length n+1, monic
    FieldElem alpha_;

    std::vector<std::uint32_t> trace_form_;            // abs_trace(x) = sum x_i * trace_form_[i]
    std::vector<std::vector<std::uint32_t>> rel_mat_;  // rel_trace as n x n matrix rows
    std::vector<std::vector<std::uint32_t>> frob_p_;   // z -> z^p as matrix rows

    mutable std::mutex label_mu_;
    mutable bool label_built_ = false;
    mutable std::map<std::vector<std::uint32_t>, std::uint64_t> label_map_;
};

/// Running power alpha^j for streaming enumeration of the cyclic group;
/// the discrete log comes along for free.
class PowerWalker {
   public:
    explicit PowerWalker(const FieldCtx& ctx)
        : ctx_(&ctx), cur_(ctx.one()), j_(0) {}
    const FieldElem& value() const { return cur_; }
    std::uint64_t log() const { return j_; }
    void advance() {
        cur_ = ctx_->mul(cur_, ctx_->alpha());
        ++j_;
    }

   private:
    const FieldCtx* ctx_;
    FieldElem cur_;
    std::uint64_t j_;
};

}  // namespace freetrace::ff

#endif
