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

#include "freetrace/cyclotomic.hpp"

#include <sstream>

namespace freetrace::cyc {

CycInt CycInt::root_power(unsigned p, unsigned t) {
    if (t >= p) throw Error("root_power exponent out of range");
    CycInt r(p);
    if (t < p - 1) {
        r.coords_[t] = 1;
    } else {
        for (auto& c : r.coords_) c = -1;
    }
    return r;
}

CycInt CycInt::from_histogram(unsigned p, const std::vector<Int>& counts) {
    if (counts.size() != p) throw Error("histogram must have p entries");
    CycInt r(p);
    const Int& top = counts[p - 1];
    for (unsigned t = 0; t + 1 < p; ++t) r.coords_[t] = counts[t] - top;
    return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    check_same(o);
    for (unsigned i = 0; i + 1 < p_; ++i) coords_[i] += o.coords_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    check_same(o);
    for (unsigned i = 0; i + 1 < p_; ++i) coords_[i] -= o.coords_[i];
    return *this;
}

CycInt CycInt::scaled(const Int& k) const {
    CycInt r(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) r.coords_[i] = coords_[i] * k;
    return r;
}

CycInt CycInt::mul_root(unsigned t) const {
    std::vector<Int> counts(p_, 0);
    for (unsigned i = 0; i + 1 < p_; ++i) counts[(i + t) % p_] = coords_[i];
    return from_histogram(p_, counts);
}

CycInt CycInt::conj_apply(unsigned u) const {
    u %= p_;
    if (u == 0) throw Error("conj_apply exponent must be coprime to p");
    std::vector<Int> counts(p_, 0);
    for (unsigned i = 0; i + 1 < p_; ++i)
        counts[static_cast<unsigned>((static_cast<std::uint64_t>(i) * u) % p_)] += coords_[i];
    return from_histogram(p_, counts);
}

std::optional<Int> CycInt::as_integer() const {
    for (unsigned i = 1; i + 1 < p_; ++i)
        if (coords_[i] != 0) return std::nullopt;
    return coords_[0];
}

bool CycInt::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << "(";
    for (unsigned i = 0; i + 1 < p_; ++i) {
        if (i) os << ", ";
        os << coords_[i].get_str();
    }
    os << ")";
    return os.str();
}

}  // namespace freetrace::cyc
