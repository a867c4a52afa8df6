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

#ifndef FREETRACE_CYCLOTOMIC_HPP
#define FREETRACE_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freetrace/errors.hpp"

namespace freetrace::cyc {

using Int = mpz_class;

/// An element of Z[zeta_p] in the power basis {1, zeta, ..., zeta^(p-2)}.
/// The basis is a Z-basis of the ring of integers, so the representation
/// is unique and equality is coordinate-wise. Only the linear structure
/// plus root-power twists and Galois maps are provided; general ring
/// multiplication is not needed for character sums and is omitted.
class CycInt {
   public:
    explicit CycInt(unsigned p) : p_(p), coords_(p - 1, 0) {}
    CycInt(unsigned p, Int constant) : p_(p), coords_(p - 1, 0) { coords_[0] = std::move(constant); }

    unsigned p() const { return p_; }
    const std::vector<Int>& coords() const { return coords_; }

    /// zeta_p^t; the relation zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    /// folds the top power into the basis.
    static CycInt root_power(unsigned p, unsigned t);

    /// Interpret counts[t] as the multiplicity of zeta^t, t in [0, p).
    static CycInt from_histogram(unsigned p, const std::vector<Int>& counts);

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }

    CycInt scaled(const Int& k) const;

    /// x * zeta^t. A basis permutation plus reduction, not general
    /// multiplication.
    CycInt mul_root(unsigned t) const;

    /// Galois twist zeta -> zeta^u, gcd(u, p) = 1. u = p-1 is complex
    /// conjugation.
    CycInt conj_apply(unsigned u) const;

    /// The rational integer value when all non-constant coordinates
    /// vanish; nullopt otherwise.
    std::optional<Int> as_integer() const;

    bool is_zero() const;
    bool operator==(const CycInt& o) const { return p_ == o.p_ && coords_ == o.coords_; }

    /// "(c0, c1, ..., c_{p-2})" for diagnostics and JSON dumps.
    std::string str() const;

   private:
    void check_same(const CycInt& o) const {
        if (p_ != o.p_) throw PMismatch("cyclotomic orders differ");
    }

    unsigned p_;
    std::vector<Int> coords_;
};

}  // namespace freetrace::cyc

#endif
