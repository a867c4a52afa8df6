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

#include "freetrace/ffield.hpp"

#include <algorithm>
#include <sstream>

namespace freetrace::ff {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Schoolbook product of little-endian coefficient vectors mod p.
Coeffs poly_mul(const Coeffs& a, const Coeffs& b, unsigned long p) {
    Coeffs r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        std::uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + ai * b[j]) % p);
        }
    }
    return r;
}

// In-place reduction modulo the monic polynomial f (little-endian, f.back() = 1).
void poly_reduce(Coeffs& a, const Coeffs& f, unsigned long p) {
    const size_t n = f.size() - 1;
    while (a.size() > n) {
        std::uint64_t c = a.back();
        a.pop_back();
        if (c) {
            size_t off = a.size() - n;
            for (size_t j = 0; j < n; ++j) {
                if (!f[j]) continue;
                std::uint64_t sub = c * f[j] % p;
                std::uint64_t cur = a[off + j];
                a[off + j] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
    }
    a.resize(n, 0);
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f, unsigned long p) {
    Coeffs r = poly_mul(a, b, p);
    poly_reduce(r, f, p);
    return r;
}

Coeffs poly_powmod(Coeffs base, Int e, const Coeffs& f, unsigned long p) {
    const size_t n = f.size() - 1;
    Coeffs r(n, 0);
    r[0] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, f, p);
        e >>= 1;
        if (e > 0) base = poly_mulmod(base, base, f, p);
    }
    return r;
}

bool poly_is_zero(const Coeffs& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// gcd of polynomials over F_p, little-endian, result monic (or zero).
Coeffs poly_gcd(Coeffs a, Coeffs b, unsigned long p) {
    auto trim = [](Coeffs& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv_mod = [p](std::uint64_t x) {
        // Fermat inverse
        std::uint64_t r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t lead_inv = inv_mod(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                std::uint64_t sub = c * b[j] % p;
                a[off + j] = static_cast<std::uint32_t>((a[off + j] + p - sub) % p);
            }
            trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::uint64_t inv = inv_mod(a.back());
        for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
    }
    return a;
}

// x^(p^k) mod f via k successive p-power maps.
Coeffs frobenius_power_of_x(unsigned k, const Coeffs& f, unsigned long p) {
    const size_t n = f.size() - 1;
    Coeffs x(n, 0);
    if (n == 1) {
        // x = -f[0] is a constant; its p-th powers are Fermat-stable
        x[0] = static_cast<std::uint32_t>((p - f[0] % p) % p);
        return x;
    }
    x[1] = 1;
    Coeffs t = x;
    for (unsigned i = 0; i < k; ++i) t = poly_powmod(t, Int(static_cast<unsigned long>(p)), f, p);
    return t;
}

bool is_irreducible(const Coeffs& f, unsigned long p, const nt::Factored& deg_factors) {
    const size_t n = f.size() - 1;
    if (n == 1) return true;
    Coeffs x(n, 0);
    x[1] = 1;
    // x^(p^n) == x
    Coeffs t = frobenius_power_of_x(static_cast<unsigned>(n), f, p);
    if (t != x) return false;
    // gcd(x^(p^(n/l)) - x, f) == 1 for every prime l | n
    for (const auto& [l, e] : deg_factors.factors) {
        unsigned k = static_cast<unsigned>(n / l.get_ui());
        Coeffs y = frobenius_power_of_x(k, f, p);
        // y - x
        std::uint64_t yx = y[1];
        y[1] = static_cast<std::uint32_t>((yx + p - 1) % p);
        if (poly_is_zero(y)) return false;
        Coeffs g = poly_gcd(y, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

FieldCtx::FieldCtx(unsigned long p, unsigned s, unsigned m, unsigned long seed)
    : p_(p), s_(s), m_(m), n_(s * m), seed_(seed) {
    if (!nt::is_probable_prime(Int(p))) throw Error("p must be prime");
    if (n_ == 0) throw Error("s*m must be >= 1");
    mpz_ui_pow_ui(q_.get_mpz_t(), p, s);
    mpz_ui_pow_ui(qm_.get_mpz_t(), p, n_);
    Q_ = (qm_ - 1) / (q_ - 1);
    group_order_ = nt::factorize(qm_ - 1);

    // deterministic modulus scan: counter digits are the non-leading
    // coefficients, starting at the seed offset
    nt::Factored deg_factors = nt::factorize(Int(n_));
    Int space;
    mpz_ui_pow_ui(space.get_mpz_t(), p, n_);
    Int counter = Int(seed) % space;
    for (Int tried = 0; tried < space; ++tried, counter = (counter + 1) % space) {
        Coeffs f(n_ + 1, 0);
        Int t = counter;
        for (unsigned i = 0; i < n_; ++i) {
            f[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(t.get_mpz_t(), p));
            t /= static_cast<unsigned long>(p);
        }
        f[n_] = 1;
        if (is_irreducible(f, p, deg_factors)) {
            modulus_ = std::move(f);
            break;
        }
    }
    if (modulus_.empty()) throw Error("no irreducible modulus found");  // unreachable

    build_tables();

    // primitive element: first element in coefficient-counter order with
    // full order; the scan starts at x
    Int cand_counter = (n_ >= 2) ? Int(static_cast<unsigned long>(p)) : Int(1);
    for (;; cand_counter += 1) {
        if (cand_counter >= qm_) throw Error("primitive element scan exhausted");  // unreachable
        FieldElem cand = zero();
        Int t = cand_counter;
        for (unsigned i = 0; i < n_; ++i) {
            cand.c[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(t.get_mpz_t(), p));
            t /= static_cast<unsigned long>(p);
        }
        if (is_zero(cand)) continue;
        bool primitive = true;
        for (const auto& [l, e] : group_order_.factors) {
            FieldElem probe = pow(cand, (qm_ - 1) / l);
            if (probe == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            alpha_ = std::move(cand);
            break;
        }
    }
}

FieldCtx::FieldCtx(const FieldCtx& o)
    : p_(o.p_),
      s_(o.s_),
      m_(o.m_),
      n_(o.n_),
      seed_(o.seed_),
      q_(o.q_),
      qm_(o.qm_),
      Q_(o.Q_),
      group_order_(o.group_order_),
      modulus_(o.modulus_),
      alpha_(o.alpha_),
      trace_form_(o.trace_form_),
      rel_mat_(o.rel_mat_),
      frob_p_(o.frob_p_) {
    std::lock_guard<std::mutex> lock(o.label_mu_);
    label_built_ = o.label_built_;
    label_map_ = o.label_map_;
}

FieldCtx& FieldCtx::operator=(const FieldCtx& o) {
    if (this == &o) return *this;
    FieldCtx tmp(o);
    p_ = tmp.p_;
    s_ = tmp.s_;
    m_ = tmp.m_;
    n_ = tmp.n_;
    seed_ = tmp.seed_;
    q_ = tmp.q_;
    qm_ = tmp.qm_;
    Q_ = tmp.Q_;
    group_order_ = std::move(tmp.group_order_);
    modulus_ = std::move(tmp.modulus_);
    alpha_ = std::move(tmp.alpha_);
    trace_form_ = std::move(tmp.trace_form_);
    rel_mat_ = std::move(tmp.rel_mat_);
    frob_p_ = std::move(tmp.frob_p_);
    label_built_ = tmp.label_built_;
    label_map_ = std::move(tmp.label_map_);
    return *this;
}

void FieldCtx::build_tables() {
    // p-Frobenius matrix: row i is the coefficient vector of (x^i)^p
    frob_p_.assign(n_, Coeffs(n_, 0));
    Coeffs xp(n_, 0);
    if (n_ == 1) {
        xp[0] = static_cast<std::uint32_t>((p_ - modulus_[0] % p_) % p_);
    } else {
        Coeffs x(n_, 0);
        x[1] = 1;
        xp = poly_powmod(x, Int(static_cast<unsigned long>(p_)), modulus_, p_);
    }
    // powers of x^p give rows: (x^i)^p = (x^p)^i
    Coeffs cur(n_, 0);
    cur[0] = 1;
    for (unsigned i = 0; i < n_; ++i) {
        frob_p_[i] = cur;
        if (i + 1 < n_) cur = poly_mulmod(cur, xp, modulus_, p_);
    }

    // absolute trace linear form: trace_form_[i] = Tr(x^i) = sum_j (x^i)^(p^j)
    trace_form_.assign(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        Coeffs acc(n_, 0);
        Coeffs t(n_, 0);
        if (i == 0)
            t[0] = 1;
        else
            t[i] = 1;
        for (unsigned j = 0; j < n_; ++j) {
            for (unsigned k = 0; k < n_; ++k) acc[k] = static_cast<std::uint32_t>((acc[k] + t[k]) % p_);
            // apply p-Frobenius via the matrix
            Coeffs nxt(n_, 0);
            for (unsigned k = 0; k < n_; ++k) {
                if (!t[k]) continue;
                std::uint64_t tk = t[k];
                for (unsigned l = 0; l < n_; ++l)
                    nxt[l] = static_cast<std::uint32_t>((nxt[l] + tk * frob_p_[k][l]) % p_);
            }
            t = std::move(nxt);
        }
        for (unsigned k = 1; k < n_; ++k)
            if (acc[k] != 0) throw Error("absolute trace of basis element not in F_p");
        trace_form_[i] = acc[0];
    }

    // q-Frobenius matrix = p-Frobenius applied s times; relative trace
    // matrix R = sum_{i<m} Fq^i
    auto mat_mul = [this](const std::vector<Coeffs>& A, const std::vector<Coeffs>& B) {
        std::vector<Coeffs> C(n_, Coeffs(n_, 0));
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned k = 0; k < n_; ++k) {
                if (!A[i][k]) continue;
                std::uint64_t a = A[i][k];
                for (unsigned j = 0; j < n_; ++j)
                    C[i][j] = static_cast<std::uint32_t>((C[i][j] + a * B[k][j]) % p_);
            }
        return C;
    };
    std::vector<Coeffs> frob_q(n_, Coeffs(n_, 0));
    for (unsigned i = 0; i < n_; ++i) frob_q[i][i] = 1;
    for (unsigned i = 0; i < s_; ++i) frob_q = mat_mul(frob_q, frob_p_);
    std::vector<Coeffs> pw(n_, Coeffs(n_, 0));
    for (unsigned i = 0; i < n_; ++i) pw[i][i] = 1;
    rel_mat_.assign(n_, Coeffs(n_, 0));
    for (unsigned i = 0; i < m_; ++i) {
        for (unsigned r = 0; r < n_; ++r)
            for (unsigned cidx = 0; cidx < n_; ++cidx)
                rel_mat_[r][cidx] = static_cast<std::uint32_t>((rel_mat_[r][cidx] + pw[r][cidx]) % p_);
        if (i + 1 < m_) pw = mat_mul(pw, frob_q);
    }
}

void FieldCtx::check(const FieldElem& a) const {
    if (a.c.size() != n_) throw CtxMismatch("element degree mismatch");
}

FieldElem FieldCtx::one() const {
    FieldElem e = zero();
    e.c[0] = 1;
    return e;
}

FieldElem FieldCtx::from_int(const Int& t) const {
    FieldElem e = zero();
    Int r = t % Int(static_cast<unsigned long>(p_));
    if (r < 0) r += static_cast<unsigned long>(p_);
    e.c[0] = static_cast<std::uint32_t>(r.get_ui());
    return e;
}

bool FieldCtx::is_zero(const FieldElem& a) const {
    check(a);
    return poly_is_zero(a.c);
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r = zero();
    for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<std::uint32_t>((a.c[i] + static_cast<std::uint64_t>(b.c[i])) % p_);
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r = zero();
    for (unsigned i = 0; i < n_; ++i)
        r.c[i] = static_cast<std::uint32_t>((a.c[i] + static_cast<std::uint64_t>(p_) - b.c[i]) % p_);
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const { return sub(zero(), a); }

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r;
    r.c = poly_mulmod(a.c, b.c, modulus_, p_);
    return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, const Int& e) const {
    check(a);
    if (e < 0) throw Error("negative exponent");
    FieldElem r;
    r.c = poly_powmod(a.c, e, modulus_, p_);
    return r;
}

FieldElem FieldCtx::pow_u64(const FieldElem& a, std::uint64_t e) const {
    return pow(a, Int(static_cast<unsigned long>(e)));
}

unsigned long FieldCtx::abs_trace(const FieldElem& x) const {
    check(x);
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < n_; ++i) acc += static_cast<std::uint64_t>(x.c[i]) * trace_form_[i] % p_;
    return acc % p_;
}

FieldElem FieldCtx::rel_trace(const FieldElem& x) const {
    check(x);
    FieldElem y = zero();
    for (unsigned k = 0; k < n_; ++k) {
        if (!x.c[k]) continue;
        std::uint64_t xk = x.c[k];
        for (unsigned l = 0; l < n_; ++l)
            y.c[l] = static_cast<std::uint32_t>((y.c[l] + xk * rel_mat_[k][l]) % p_);
    }
    return y;
}

unsigned long FieldCtx::subfield_abs_trace(const FieldElem& y) const {
    check(y);
    if (!in_subfield(y)) throw NotInSubfield("subfield_abs_trace argument");
    FieldElem acc = zero();
    FieldElem t = y;
    for (unsigned j = 0; j < s_; ++j) {
        acc = add(acc, t);
        // t <- t^p via the Frobenius matrix
        FieldElem nxt = zero();
        for (unsigned k = 0; k < n_; ++k) {
            if (!t.c[k]) continue;
            std::uint64_t tk = t.c[k];
            for (unsigned l = 0; l < n_; ++l)
                nxt.c[l] = static_cast<std::uint32_t>((nxt.c[l] + tk * frob_p_[k][l]) % p_);
        }
        t = std::move(nxt);
    }
    for (unsigned k = 1; k < n_; ++k)
        if (acc.c[k] != 0) throw Error("subfield trace did not land in F_p");
    return acc.c[0];
}

bool FieldCtx::in_subfield(const FieldElem& y) const {
    check(y);
    return pow(y, q_) == y;
}

Int FieldCtx::element_order(const FieldElem& x) const {
    check(x);
    if (is_zero(x)) throw ZeroElement("element_order(0)");
    Int t = qm_ - 1;
    for (const auto& [l, e] : group_order_.factors) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = t / l;
            if (mpz_divisible_p(t.get_mpz_t(), l.get_mpz_t()) && pow(x, cand) == one())
                t = cand;
            else
                break;
        }
    }
    return t;
}

bool FieldCtx::is_nfree(const FieldElem& x, const Int& N) const {
    check(x);
    if (is_zero(x)) throw ZeroElement("is_nfree(0)");
    nt::Factored nf = nt::factor_divisor(group_order_, N);
    for (const auto& [l, e] : nf.factors) {
        if (pow(x, (qm_ - 1) / l) == one()) return false;
    }
    return true;
}

const std::map<std::vector<std::uint32_t>, std::uint64_t>& FieldCtx::label_map() const {
    std::lock_guard<std::mutex> lock(label_mu_);
    if (!label_built_) {
        if (mpz_sizeinbase(q_.get_mpz_t(), 2) > 40)
            throw BudgetExceeded("subfield label table for huge q");
        std::uint64_t qm1 = q_.get_ui() - 1;
        FieldElem beta = pow(alpha_, Q_);
        FieldElem cur = one();
        for (std::uint64_t i = 0; i < qm1; ++i) {
            label_map_[cur.c] = i;
            cur = mul(cur, beta);
        }
        label_built_ = true;
    }
    return label_map_;
}

SubLabel FieldCtx::subfield_label(const FieldElem& c) const {
    check(c);
    if (is_zero(c)) return SubLabel::zero();
    const auto& map = label_map();
    auto it = map.find(c.c);
    if (it == map.end()) throw NotInSubfield("subfield_label argument");
    return SubLabel::power(it->second);
}

FieldElem FieldCtx::subfield_element(const SubLabel& label) const {
    if (label.is_zero) return zero();
    if (Int(static_cast<unsigned long>(label.pow)) >= q_ - 1) throw NotInSubfield("label exponent out of range");
    return pow(alpha_, Q_ * Int(static_cast<unsigned long>(label.pow)));
}

FieldCtx FieldCtx::rebase_alpha(const Int& k) const {
    if (gcd(k, qm_ - 1) != 1) throw Error("rebase exponent not coprime to group order");
    FieldCtx c(*this);
    c.alpha_ = pow(alpha_, k);
    std::lock_guard<std::mutex> lock(c.label_mu_);
    c.label_built_ = false;
    c.label_map_.clear();
    return c;
}

std::uint64_t FieldCtx::group_order_u64() const {
    if (!(qm_ - 1).fits_ulong_p()) throw BudgetExceeded("group order exceeds 64 bits");
    return (qm_ - 1).get_ui();
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    os << "F_" << qm_.get_str() << " = F_" << p_ << "^" << n_ << " over F_" << q_.get_str()
       << " (Q=" << Q_.get_str() << ")";
    return os.str();
}

}  // namespace freetrace::ff
