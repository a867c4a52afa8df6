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

#include "freetrace/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>

#include <json.hpp>

namespace freetrace::cli {

using json = nlohmann::json;
using Int = mpz_class;

namespace {

std::uint64_t effective_budget(const RunConfig& cfg) {
    return cfg.budget ? cfg.budget : default_enum_budget();
}

json report_json(const oracle::CountReport& r, std::optional<bool> match) {
    json j{{"p", r.p},           {"s", r.s},
           {"m", r.m},           {"N", r.N.get_str()},
           {"c", r.c_label},     {"quantity", r.quantity},
           {"method", r.method}, {"branch", r.branch},
           {"value", r.value.get_str()}};
    if (match) j["match"] = *match;
    return j;
}

std::string csv_row(const oracle::CountReport& r, std::optional<bool> match) {
    std::ostringstream os;
    os << r.p << "," << r.s << "," << r.m << "," << r.N.get_str() << "," << r.c_label << ","
       << r.quantity << "," << r.method << "," << r.branch << "," << r.value.get_str() << ","
       << (match ? (*match ? "true" : "false") : "");
    return os.str();
}

void emit_reports(const RunConfig& cfg, const std::vector<oracle::CountReport>& reports,
                  std::optional<bool> match, std::ostream& out) {
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r, match));
        out << arr.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "p,s,m,N,c,quantity,method,branch,value,match\n";
        for (const auto& r : reports) out << csv_row(r, match) << "\n";
    } else {
        for (const auto& r : reports) {
            out << r.quantity << "(" << r.c_label << ") over p=" << r.p << " s=" << r.s
                << " m=" << r.m << " N=" << r.N.get_str() << " [" << r.method
                << (r.branch.empty() ? "" : ":" + r.branch) << "] = " << r.value.get_str() << "\n";
        }
        if (match) out << "match=" << (*match ? "true" : "false") << "\n";
    }
}

std::vector<Int> hints_for(const std::map<Int, std::vector<Int>>& hints, const Int& n) {
    std::vector<Int> out;
    for (const auto& [key, primes] : hints) {
        for (const Int& h : primes)
            if (mpz_divisible_p(n.get_mpz_t(), h.get_mpz_t())) out.push_back(h);
    }
    return out;
}

}  // namespace

ff::SubLabel parse_label(const ff::FieldCtx& ctx, const std::string& text) {
    if (text == "0") return ff::SubLabel::zero();
    if (text.rfind("pow:", 0) == 0) {
        std::uint64_t i = std::stoull(text.substr(4));
        if (Int(static_cast<unsigned long>(i)) >= ctx.q() - 1)
            throw ParseError("label exponent out of range: " + text);
        return ff::SubLabel::power(i);
    }
    if (text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad trace label: " + text);
    if (ctx.s() != 1)
        throw ParseError("bare integer labels need s = 1; use pow:i");
    return ctx.subfield_label(ctx.from_int(Int(text)));
}

const std::vector<std::pair<unsigned, std::string>>& mersenne_table() {
    static const std::vector<std::pair<unsigned, std::string>> table = {
        {2, "8"},
        {3, "80"},
        {5, "6912"},
        {7, "464256"},
        {13, "111974400000"},
        {17, "519390596431872"},
        {19, "30572599504748544"},
        {31, "1968482608781191263129600000"},
        {61, "2159465982279294537199679191374585254935265280000000000"},
        {89, "51505739520752637174787391794396705748179291647742969497437393928825245616046080"},
    };
    return table;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.p == 0) {
        err << "count: --p is required\n";
        return kExitUsage;
    }
    std::uint64_t budget = effective_budget(cfg);

    if (cfg.quantity == "I") {
        ff::FieldCtx qctx(cfg.p, cfg.s, 1);
        ff::SubLabel lab = parse_label(qctx, cfg.c);
        std::vector<oracle::CountReport> reports;
        std::optional<bool> match;
        oracle::CountReport formula = formulas::carlitz(Int(cfg.p), cfg.s, cfg.m, lab.is_zero);
        formula.c_label = lab.str();
        if (cfg.method == "formula" || cfg.method == "both") reports.push_back(formula);
        if (cfg.method == "oracle" || cfg.method == "both") {
            Int o = oracle::count_irreducible_trace_oracle(qctx, cfg.m, qctx.subfield_element(lab),
                                                           budget);
            oracle::CountReport orep = oracle::make_report(qctx, Int(0), lab.str(), "I", "oracle", "", o);
            orep.m = cfg.m;
            reports.push_back(orep);
            if (cfg.method == "both") match = formula.value == o;
        }
        emit_reports(cfg, reports, match, out);
        return (match && !*match) ? kExitMismatch : kExitOk;
    }

    ff::FieldCtx ctx(cfg.p, cfg.s, cfg.m, cfg.seed);
    Int N = (cfg.N == "max") ? ctx.field_size() - 1 : Int(cfg.N);
    if (N < 1 || !mpz_divisible_p((ctx.field_size() - 1).get_mpz_t(), N.get_mpz_t())) {
        err << "count: N must divide q^m - 1\n";
        return kExitUsage;
    }
    ff::SubLabel lab = parse_label(ctx, cfg.c);
    gauss::PeriodBank bank(ctx, budget);

    std::vector<oracle::CountReport> reports;
    std::optional<bool> match;
    oracle::CountReport formula;
    bool have_formula = false;
    if (cfg.method == "formula" || cfg.method == "both") {
        if (cfg.quantity == "Z") {
            if (lab.is_zero) {
                formula = formulas::z_zero_special(bank, N);
            } else {
                try {
                    formula = formulas::z_nonzero_uniform(bank, N, lab);
                } catch (const HypothesisNotMet&) {
                    formula = formulas::z_general(bank, N, lab);
                }
            }
        } else if (cfg.quantity == "P") {
            if (lab.is_zero) {
                try {
                    formula = formulas::p_from_relation(bank, N);
                } catch (const HypothesisNotMet&) {
                    formula = formulas::p_general(bank, N, lab);
                }
            } else {
                formula = formulas::p_general(bank, N, lab);
            }
        } else {
            err << "count: unknown quantity " << cfg.quantity << "\n";
            return kExitUsage;
        }
        have_formula = true;
        reports.push_back(formula);
    }
    if (cfg.method == "oracle" || cfg.method == "both") {
        oracle::CountReport orep = (cfg.quantity == "Z") ? oracle::count_z_oracle(ctx, N, lab, budget)
                                                         : oracle::count_p_oracle(ctx, N, lab, budget);
        reports.push_back(orep);
        if (have_formula) match = formula.value == orep.value;
    }
    emit_reports(cfg, reports, match, out);
    return (match && !*match) ? kExitMismatch : kExitOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::map<Int, std::vector<Int>> hints;
    if (!cfg.hints_path.empty()) hints = nt::load_hints_file(cfg.hints_path);

    bool all_match = true;
    json rows = json::array();
    for (unsigned l : cfg.exponents) {
        Int p = (Int(1) << l) - 1;
        auto t0 = std::chrono::steady_clock::now();
        oracle::CountReport r =
            formulas::z_mersenne_quartic(p, hints_for(hints, p * p + 1));
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::optional<std::string> expected;
        for (const auto& [le, v] : mersenne_table())
            if (le == l) expected = v;
        bool match = expected && *expected == r.value.get_str();
        if (!match) all_match = false;
        if (cfg.format == "json") {
            rows.push_back({{"exponent", l},
                            {"p", p.get_str()},
                            {"value", r.value.get_str()},
                            {"expected", expected ? *expected : ""},
                            {"match", match},
                            {"seconds", dt}});
        } else {
            out << "2^" << l << "-1 = " << p.get_str() << "  Z(0) = " << r.value.get_str()
                << (match ? "  [ok]" : "  [MISMATCH]") << "\n";
            if (!match && expected) err << "expected " << *expected << "\n";
        }
    }
    if (cfg.format == "json") out << rows.dump(2) << "\n";
    return all_match ? kExitOk : kExitMismatch;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    verify::Options opts;
    opts.q_list = cfg.q_list;
    opts.cap = cfg.cap;
    opts.workers = cfg.workers;
    opts.budget = cfg.budget ? cfg.budget : kSweepEnumBudget;
    opts.inject_fault = cfg.inject_fault;

    verify::Report rep = verify::run_sweep(opts);
    rep.merge(verify::run_classifier_checks());
    rep.merge(verify::run_carlitz_sweep(std::min<std::uint64_t>(cfg.cap * 3, 30000)));
    if (opts.cap >= 81) {
        verify::Options small = opts;
        rep.merge(verify::check_alpha_invariance(3, 1, 4, small));
        rep.merge(verify::check_alpha_invariance(2, 2, 2, small));
    }

    out << rep.summary() << "\n";
    if (!rep.ok()) {
        for (const auto& f : rep.failures) err << "FAIL " << f.suite << " " << f.witness << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.p == 0) {
        err << "classify: --p is required\n";
        return kExitUsage;
    }
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), cfg.p, cfg.s);
    Int qm;
    mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), cfg.m);
    Int G = qm - 1;
    Int Q = G / (q - 1);
    nt::Factored Gf = nt::factorize(G);
    nt::Factored qm1f = nt::factorize(q - 1);

    bool uniform = (cfg.m >= 2 && q > 2) ? nt::radical_equality(q, Int(cfg.m)) : (q == 2);
    Int D = 1;
    for (const auto& [l, e] : qm1f.factors)
        if (mpz_divisible_p(Q.get_mpz_t(), l.get_mpz_t())) {
            Int le;
            mpz_pow_ui(le.get_mpz_t(), l.get_mpz_t(), e);
            D *= le;
        }
    Int K = 1;  // coprime part of q^m-1 relative to Q
    for (const auto& [l, e] : Gf.factors)
        if (!mpz_divisible_p(Q.get_mpz_t(), l.get_mpz_t())) {
            Int le;
            mpz_pow_ui(le.get_mpz_t(), l.get_mpz_t(), e);
            K *= le;
        }
    nt::MersenneQuartic crit = nt::mersenne_quartic_criterion(Int(cfg.p), cfg.s, cfg.m);
    Int radQ = nt::radical(nt::factorize(Q));
    auto j = gauss::least_negation_exponent(Int(cfg.p), radQ);

    json rep{{"p", cfg.p},
             {"s", cfg.s},
             {"m", cfg.m},
             {"q", q.get_str()},
             {"Q", Q.get_str()},
             {"uniform", uniform},
             {"semiprimitive_j", j ? json(j->get_str()) : json(nullptr)},
             {"criterion", crit.kind == nt::MersenneQuartic::Kind::M2          ? "m=2"
                           : crit.kind == nt::MersenneQuartic::Kind::Quartic   ? "mersenne-quartic"
                                                                               : "none"},
             {"witness_j", crit.kind == nt::MersenneQuartic::Kind::None
                               ? json(nullptr)
                               : json(crit.witness_j.get_str())},
             {"D", D.get_str()},
             {"L_Q", (D * Q).get_str()},
             {"K_Q", K.get_str()}};
    if (cfg.format == "json")
        out << rep.dump(2) << "\n";
    else {
        out << "q=" << q.get_str() << " m=" << cfg.m << " Q=" << Q.get_str()
            << " uniform=" << (uniform ? "true" : "false") << " criterion=" << rep["criterion"]
            << " j=" << (j ? j->get_str() : "absent") << " D=" << D.get_str()
            << " L_Q=" << (D * Q).get_str() << " K_Q=" << K.get_str() << "\n";
    }
    return kExitOk;
}

int cmd_periods(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.p == 0) {
        err << "periods: --p is required\n";
        return kExitUsage;
    }
    ff::FieldCtx ctx(cfg.p, cfg.s, cfg.m, cfg.seed);
    Int d = (cfg.d == "max") ? ctx.field_size() - 1 : Int(cfg.d);
    gauss::PeriodTable t = gauss::periods(ctx, d, effective_budget(cfg));
    bool integral = true;
    for (const auto& v : t.values)
        if (!v.as_integer()) integral = false;
    json values = json::array();
    for (const auto& v : t.values) {
        if (integral) {
            values.push_back(v.as_integer()->get_str());
        } else {
            json coords = json::array();
            for (const auto& c : v.coords()) coords.push_back(c.get_str());
            values.push_back(coords);
        }
    }
    json rep{{"d", d.get_str()}, {"integer", integral}, {"values", values}};
    out << rep.dump(2) << "\n";
    return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.subcommand == "count") return cmd_count(cfg, out, err);
        if (cfg.subcommand == "table") return cmd_table(cfg, out, err);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
        if (cfg.subcommand == "classify") return cmd_classify(cfg, out, err);
        if (cfg.subcommand == "periods") return cmd_periods(cfg, out, err);
        err << "unknown subcommand: " << cfg.subcommand << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const NonIntegerResult& e) {
        err << e.what() << "\n";
        return kExitNonInteger;
    } catch (const FactorizationTimeout& e) {
        err << e.what() << "\n";
        return kExitBudget;
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitMismatch;
    }
}

}  // namespace freetrace::cli
