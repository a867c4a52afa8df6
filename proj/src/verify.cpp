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

#include "freetrace/verify.hpp"

#include <array>
#include <atomic>
#include <sstream>
#include <thread>

namespace freetrace::verify {

namespace {

std::string field_tag(unsigned long p, unsigned s, unsigned m) {
    std::ostringstream os;
    os << "p=" << p << ",s=" << s << ",m=" << m;
    return os.str();
}

ff::SubLabel label_of_index(std::uint64_t idx) {
    return idx == 0 ? ff::SubLabel::zero() : ff::SubLabel::power(idx - 1);
}

void record(Report& r, const std::string& suite, const std::string& witness, bool pass) {
    ++r.checks;
    if (!pass) r.failures.push_back({suite, witness});
}

}  // namespace

void Report::merge(const Report& o) {
    checks += o.checks;
    z_matches += o.z_matches;
    p_matches += o.p_matches;
    zero_trace_matches += o.zero_trace_matches;
    uniform_instances += o.uniform_instances;
    relation_instances += o.relation_instances;
    existence_instances += o.existence_instances;
    identity_checks += o.identity_checks;
    for (const auto& [k, v] : o.branch_hits) branch_hits[k] += v;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

std::string Report::summary() const {
    std::ostringstream os;
    os << "checks=" << checks << " z=" << z_matches << " p=" << p_matches
       << " zero=" << zero_trace_matches << " uniform=" << uniform_instances
       << " relation=" << relation_instances << " existence=" << existence_instances
       << " identities=" << identity_checks << " failures=" << failures.size();
    if (!branch_hits.empty()) {
        os << " branches{";
        bool first = true;
        for (const auto& [k, v] : branch_hits) {
            if (!first) os << ",";
            first = false;
            os << k << ":" << v;
        }
        os << "}";
    }
    return os.str();
}

std::vector<std::array<unsigned long, 3>> sweep_fields(const Options& opts) {
    std::vector<std::array<unsigned long, 3>> out;
    for (std::uint64_t q : opts.q_list) {
        nt::Factored qf = nt::factorize(Int(static_cast<unsigned long>(q)));
        if (qf.factors.size() != 1) throw Error("q list entries must be prime powers");
        unsigned long p = qf.factors[0].first.get_ui();
        unsigned s = qf.factors[0].second;
        Int size = q;
        for (unsigned m = 2;; ++m) {
            size *= q;
            if (size > opts.cap) break;
            out.push_back({p, s, m});
        }
    }
    return out;
}

Report check_field(unsigned long p, unsigned s, unsigned m, const Options& opts) {
    Report rep;
    ff::FieldCtx ctx(p, s, m);
    oracle::OracleSweep osweep(ctx, opts.budget);
    gauss::PeriodBank bank(ctx, opts.budget);

    const Int G = ctx.field_size() - 1;
    const std::uint64_t q = ctx.q().get_ui();
    const Int LQ = formulas::largest_same_radical(ctx);
    std::vector<Int> divs = nt::divisors(ctx.group_order());
    const std::string ftag = field_tag(p, s, m);

    bool fault_pending = opts.inject_fault;
    for (const Int& N : divs) {
        nt::Factored nf = nt::factor_divisor(ctx.group_order(), N);
        bool rad_divides_Q = true;
        for (const auto& [l, e] : nf.factors)
            if (!mpz_divisible_p(ctx.Q().get_mpz_t(), l.get_mpz_t())) rad_divides_Q = false;

        std::vector<Int> oracle_z(q), oracle_p(q);
        for (std::uint64_t li = 0; li < q; ++li) {
            oracle_z[li] = Int(static_cast<unsigned long>(osweep.z_count(N, li)));
            oracle_p[li] = Int(static_cast<unsigned long>(osweep.p_count(N, li)));
            if (fault_pending) {
                oracle_z[li] += 1;  // harness self-test
                fault_pending = false;
            }
            ff::SubLabel lab = label_of_index(li);
            Int zf = formulas::z_general(bank, N, lab).value;
            Int pf = formulas::p_general(bank, N, lab).value;
            std::string tup = ftag + ",N=" + N.get_str() + ",c=" + lab.str();
            record(rep, "z-general", tup + " formula=" + zf.get_str() + " oracle=" + oracle_z[li].get_str(),
                   zf == oracle_z[li]);
            if (zf == oracle_z[li]) ++rep.z_matches;
            record(rep, "p-general", tup + " formula=" + pf.get_str() + " oracle=" + oracle_p[li].get_str(),
                   pf == oracle_p[li]);
            if (pf == oracle_p[li]) ++rep.p_matches;
        }

        // zero-trace theorem and its branch dispatch
        Int z0 = formulas::z_zero(bank, N).value;
        oracle::CountReport sp = formulas::z_zero_special(bank, N);
        std::string tup = ftag + ",N=" + N.get_str();
        record(rep, "z-zero", tup + " formula=" + z0.get_str() + " oracle=" + oracle_z[0].get_str(),
               z0 == oracle_z[0]);
        if (z0 == oracle_z[0]) ++rep.zero_trace_matches;
        record(rep, "z-zero-special", tup + " branch=" + sp.branch, sp.value == z0);
        ++rep.branch_hits[sp.branch];

        // uniformity of the nonzero-trace counts
        if (rad_divides_Q && q > 1) {
            bool all_equal = true;
            for (std::uint64_t li = 2; li < q; ++li)
                if (oracle_z[li] != oracle_z[1]) all_equal = false;
            Int uf = formulas::z_nonzero_uniform(bank, N, ff::SubLabel::power(0)).value;
            record(rep, "uniformity", tup + " uniform=" + uf.get_str(),
                   all_equal && (q == 1 || uf == oracle_z[1]));
            ++rep.uniform_instances;
        }

        // order/zero-trace relation and the existence criterion
        if (mpz_divisible_p(N.get_mpz_t(), LQ.get_mpz_t())) {
            record(rep, "relation", tup, G * oracle_p[0] == N * oracle_z[0]);
            Int pr = formulas::p_from_relation(bank, N).value;
            record(rep, "relation-formula", tup, pr == oracle_p[0]);
            ++rep.relation_instances;
            if (m > 1) {
                bool expect = formulas::exists_order_trace_zero(ctx, N);
                record(rep, "existence", tup, (oracle_p[0] > 0) == expect);
                ++rep.existence_instances;
            }
        }
    }
    return rep;
}

Report check_period_identities(unsigned long p, unsigned s, unsigned m, const Options& opts) {
    Report rep;
    ff::FieldCtx ctx(p, s, m);
    gauss::PeriodBank bank(ctx, opts.budget);
    const Int G = ctx.field_size() - 1;
    const std::uint64_t q = ctx.q().get_ui();
    const unsigned pp = static_cast<unsigned>(p);
    std::vector<Int> divs = nt::divisors(ctx.group_order());
    const std::string ftag = field_tag(p, s, m);
    auto note = [&](const std::string& suite, const std::string& witness, bool pass) {
        record(rep, suite, ftag + "," + witness, pass);
        ++rep.identity_checks;
    };

    // cached trace pass for the direct character-sum forms
    std::vector<std::uint32_t> traces(G.get_ui());
    {
        ff::PowerWalker walk(ctx);
        for (std::uint64_t j = 0; j < traces.size(); ++j, walk.advance())
            traces[j] = static_cast<std::uint32_t>(ctx.abs_trace(walk.value()));
    }

    for (const Int& d : divs) {
        const gauss::PeriodTable& t = bank.table(d);
        cyc::CycInt sum(pp);
        for (const auto& v : t.values) sum += v;
        note("row-sum", "d=" + d.get_str(), sum == cyc::CycInt(pp, Int(-1)));
        if (mpz_divisible_p(ctx.Q().get_mpz_t(), d.get_mpz_t())) {
            bool all_int = true;
            for (const auto& v : t.values)
                if (!v.as_integer()) all_int = false;
            note("integrality", "d=" + d.get_str(), all_int);
        }
    }

    for (const Int& N : divs) {
        nt::Factored nf = nt::factor_divisor(ctx.group_order(), N);
        Int g = gcd(ctx.Q(), N);
        Int K = formulas::coprime_part(nf, ctx.Q());
        nt::Factored kf = nt::factor_divisor(nf, K);

        // Delta depends only on the radical
        note("delta-radical", "N=" + N.get_str(),
             gauss::delta(bank, N, 1) == gauss::delta(bank, nt::radical(nf), 1));

        // Delta_{Nk}(N) = Delta_0(N)
        cyc::CycInt d0 = gauss::delta(bank, N, 0);
        note("delta-shift", "N=" + N.get_str(),
             gauss::delta(bank, N, N) == d0 && gauss::delta(bank, N, 2 * N) == d0);

        // sum_{i<N} Delta_i(N) = -phi(N)
        if (N.fits_ulong_p() && N.get_ui() <= opts.identity_cap) {
            cyc::CycInt acc(pp);
            for (std::uint64_t i = 0; i < N.get_ui(); ++i)
                acc += gauss::delta(bank, N, Int(static_cast<unsigned long>(i)));
            note("delta-total", "N=" + N.get_str(), acc == cyc::CycInt(pp, -nt::euler_phi(nf)));
        }

        // Delta_k(N) = sum over i with gcd(N, i-k) = 1 of zeta^tr(alpha^i)
        for (std::uint64_t k : {std::uint64_t(0), std::uint64_t(1), std::uint64_t(2)}) {
            std::vector<Int> hist(pp, 0);
            std::uint64_t Nu = N.get_ui(), Gu = G.get_ui();
            for (std::uint64_t i = 1; i <= Gu; ++i) {
                std::uint64_t diff = (i + Gu - k % Gu) % Nu;
                std::uint64_t a = diff, b = Nu;
                while (b) {
                    a %= b;
                    std::swap(a, b);
                }
                if (a == 1) hist[traces[i % Gu]] += 1;
            }
            note("delta-direct", "N=" + N.get_str() + ",k=" + std::to_string(k),
                 cyc::CycInt::from_histogram(pp, hist) ==
                     gauss::delta(bank, N, Int(static_cast<unsigned long>(k))));
        }

        // coset collapse: sum_{i<q-1} eta_{Qi+k}^{(N)} = (q-1) g / N * eta_k^{(g)}
        for (std::uint64_t k : {std::uint64_t(0), std::uint64_t(1)}) {
            cyc::CycInt acc(pp);
            for (std::uint64_t i = 0; i + 1 < q; ++i)
                acc += bank.eta(N, ctx.Q() * Int(static_cast<unsigned long>(i)) + k);
            cyc::CycInt rhs =
                bank.eta(g, Int(static_cast<unsigned long>(k))).scaled((ctx.q() - 1) * g / N);
            note("coset-collapse", "N=" + N.get_str() + ",k=" + std::to_string(k), acc == rhs);
        }

        // cleared-denominator f/Delta identity:
        // K * f_k(N, 0, Delta) = (q-1) phi(K) Delta_k(g)
        for (std::uint64_t k : {std::uint64_t(0), std::uint64_t(1)}) {
            cyc::CycInt lhs =
                gauss::f_twisted(bank, N, ff::SubLabel::zero(), Int(static_cast<unsigned long>(k)))
                    .scaled(K);
            cyc::CycInt rhs = gauss::delta(bank, g, Int(static_cast<unsigned long>(k)))
                                  .scaled((ctx.q() - 1) * nt::euler_phi(kf));
            note("f-delta", "N=" + N.get_str() + ",k=" + std::to_string(k), lhs == rhs);
        }

        // Gamma telescope: sum_{d|N} Gamma_k(d) = eta_k^{(G/N)}
        for (std::uint64_t k : {std::uint64_t(0), std::uint64_t(1)}) {
            cyc::CycInt acc(pp);
            for (const Int& dd : nt::divisors(nf))
                acc += gauss::gamma_sum(bank, dd, Int(static_cast<unsigned long>(k)));
            note("gamma-telescope", "N=" + N.get_str() + ",k=" + std::to_string(k),
                 acc == bank.eta(G / N, Int(static_cast<unsigned long>(k))));
        }
    }

    // closed-form periods against character sums
    note("closed-1", "d=1",
         gauss::period_closed_form(ctx, 1, gauss::PeriodForm::One) ==
             *bank.eta(1, 0).as_integer());
    if (mpz_divisible_ui_p(G.get_mpz_t(), 2) && (s * m) % 2 == 0) {
        note("closed-2", "d=2",
             gauss::period_closed_form(ctx, 2, gauss::PeriodForm::Two) ==
                 *bank.eta(2, 0).as_integer());
    }
    if (mpz_divisible_ui_p(G.get_mpz_t(), 3) && (s * m) % 3 == 0 && p % 3 == 1) {
        auto direct = bank.eta(3, 0).as_integer();
        if (direct)
            note("closed-3", "d=3",
                 gauss::period_closed_form(ctx, 3, gauss::PeriodForm::Three) == *direct);
    }
    {
        auto qq = bank.eta(ctx.Q(), 0).as_integer();
        note("closed-Q", "d=Q",
             qq && gauss::period_closed_form(ctx, ctx.Q(), gauss::PeriodForm::SubfieldIndex) == *qq);
    }
    for (const Int& d : divs) {
        if (d <= 2) continue;
        try {
            Int cf = gauss::period_closed_form(ctx, d, gauss::PeriodForm::SemiPrimitive);
            auto direct = bank.eta(d, 0).as_integer();
            note("closed-semiprimitive", "d=" + d.get_str(), direct && cf == *direct);
        } catch (const HypothesisNotMet&) {
        }
    }

    return rep;
}

Report run_sweep(const Options& opts) {
    std::vector<std::array<unsigned long, 3>> fields = sweep_fields(opts);
    std::vector<Report> partial(fields.size());
    std::atomic<size_t> next{0};
    unsigned workers = std::max(1u, opts.workers);
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= fields.size()) return;
            auto [p, s, m] = fields[i];
            Options local = opts;
            local.inject_fault = opts.inject_fault && i == 0;
            Report r = check_field(p, s, m, local);
            Int size;
            mpz_ui_pow_ui(size.get_mpz_t(), p, s * m);
            if (opts.run_identities && size <= opts.identity_cap) {
                r.merge(check_period_identities(p, s, m, local));
            }
            partial[i] = std::move(r);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    Report total;
    for (const Report& r : partial) total.merge(r);  // deterministic field order
    return total;
}

Report run_carlitz_sweep(std::uint64_t cap) {
    Report rep;
    for (std::uint64_t q = 2; q * q <= cap; ++q) {
        nt::Factored qf = nt::factorize(Int(static_cast<unsigned long>(q)));
        if (qf.factors.size() != 1) continue;
        unsigned long p = qf.factors[0].first.get_ui();
        unsigned s = qf.factors[0].second;
        ff::FieldCtx qctx(p, s, 1);
        std::uint64_t power = q;
        for (unsigned m = 1;; ++m) {
            power *= q;  // q^(m+1)
            if (power > cap) break;
            Int formula_nz = formulas::carlitz(Int(p), s, m, false).value;
            Int formula_z = formulas::carlitz(Int(p), s, m, true).value;
            Int oracle_z = oracle::count_irreducible_trace_oracle(qctx, m, qctx.zero(), cap);
            std::string tup = "q=" + std::to_string(q) + ",m=" + std::to_string(m);
            record(rep, "carlitz-zero", tup + " formula=" + formula_z.get_str() + " oracle=" + oracle_z.get_str(),
                   formula_z == oracle_z);
            // every nonzero trace value must give the same count
            ff::PowerWalker walk(qctx);
            for (std::uint64_t i = 0; i + 1 < q; ++i, walk.advance()) {
                Int o = oracle::count_irreducible_trace_oracle(qctx, m, walk.value(), cap);
                record(rep, "carlitz-nonzero", tup + ",c=pow:" + std::to_string(i), o == formula_nz);
            }
        }
    }
    return rep;
}

Report run_classifier_checks() {
    Report rep;
    // quartic Mersenne criterion vs direct search for j with
    // p^j = -1 (mod Rad(Q)), j up to the order of p
    for (unsigned long pexp = 2; pexp <= 64; ++pexp) {
        nt::Factored f = nt::factorize(Int(pexp));
        if (f.factors.size() != 1) continue;
        unsigned long p = f.factors[0].first.get_ui();
        unsigned s = f.factors[0].second;
        for (unsigned m = 2; m <= 8; ++m) {
            Int q;
            mpz_ui_pow_ui(q.get_mpz_t(), p, s);
            Int qm;
            mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), m);
            Int Q = (qm - 1) / (q - 1);
            Int rad = nt::radical(nt::factorize(Q));
            bool brute = false;
            Int brute_j = 0;
            if (rad == 1) {
                brute = false;  // no modulus to negate in
            } else if (rad == 2) {
                brute = true;  // p odd here, p^1 = -1 (mod 2)
                brute_j = 1;
            } else {
                Int t = nt::ord_mod(Int(p), nt::factorize(rad));
                Int probe = 1;
                for (Int j = 1; j <= t; ++j) {
                    probe = probe * p % rad;
                    if (probe == rad - 1) {
                        brute = true;
                        brute_j = j;
                        break;
                    }
                }
            }
            nt::MersenneQuartic crit = nt::mersenne_quartic_criterion(Int(p), s, m);
            bool crit_yes = crit.kind != nt::MersenneQuartic::Kind::None;
            std::string tup = "q=" + q.get_str() + ",m=" + std::to_string(m);
            record(rep, "mersenne-criterion", tup + " brute=" + (brute ? "1" : "0"),
                   crit_yes == brute);
            if (crit_yes && brute) {
                Int probe;
                mpz_powm(probe.get_mpz_t(), Int(p).get_mpz_t(), crit.witness_j.get_mpz_t(),
                         rad.get_mpz_t());
                record(rep, "mersenne-witness", tup, rad <= 2 || probe == rad - 1);
            }
        }
    }
    // radical equality vs direct radical comparison
    for (unsigned long b = 2; b <= 9; ++b) {
        for (unsigned long m = 2; m <= 8; ++m) {
            Int bm;
            mpz_ui_pow_ui(bm.get_mpz_t(), b, m);
            Int lhs = nt::radical(nt::factorize(bm - 1));
            Int rhs = nt::radical(nt::factorize((bm - 1) / (b - 1)));
            bool direct = lhs == rhs;
            bool fast = nt::radical_equality(Int(b), Int(m));
            record(rep, "radical-equality", "b=" + std::to_string(b) + ",m=" + std::to_string(m),
                   direct == fast);
        }
    }
    return rep;
}

Report check_alpha_invariance(unsigned long p, unsigned s, unsigned m, const Options& opts) {
    Report rep;
    ff::FieldCtx ctx(p, s, m);
    // first exponent coprime to the group order beyond 1
    Int G = ctx.field_size() - 1;
    Int k = 2;
    while (gcd(k, G) != 1) ++k;
    ff::FieldCtx ctx2 = ctx.rebase_alpha(k);

    oracle::OracleSweep s1(ctx, opts.budget), s2(ctx2, opts.budget);
    gauss::PeriodBank b1(ctx, opts.budget), b2(ctx2, opts.budget);
    std::uint64_t q = ctx.q().get_ui();
    const std::string ftag = field_tag(p, s, m);
    for (const Int& N : nt::divisors(ctx.group_order())) {
        for (std::uint64_t li = 0; li < q; ++li) {
            bool zo = s1.z_count(N, li) == s2.z_count(N, li);
            bool po = s1.p_count(N, li) == s2.p_count(N, li);
            ff::SubLabel lab = label_of_index(li);
            bool zf = formulas::z_general(b1, N, lab).value == formulas::z_general(b2, N, lab).value;
            std::string tup = ftag + ",N=" + N.get_str() + ",c=" + lab.str();
            record(rep, "alpha-invariance", tup, zo && po && zf);
        }
    }
    return rep;
}

}  // namespace freetrace::verify
