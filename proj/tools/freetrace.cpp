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

#include <CLI11.hpp>
#include <iostream>

#include "freetrace/cli.hpp"

int main(int argc, char** argv) {
    using freetrace::cli::RunConfig;
    CLI::App app{"Exact counts of N-free elements, prescribed-order elements, and irreducible "
                 "polynomials with prescribed trace over finite fields"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_field_opts = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "characteristic (prime)");
        sub->add_option("--s", cfg.s, "q = p^s");
        sub->add_option("--m", cfg.m, "extension degree over F_q");
        sub->add_option("--seed", cfg.seed, "modulus scan offset");
        sub->add_option("--budget", cfg.budget, "enumeration budget override");
        sub->add_option("--format", cfg.format, "text | json | csv");
    };

    CLI::App* count = app.add_subcommand("count", "one count, by formula and/or oracle");
    add_field_opts(count);
    count->add_option("--N", cfg.N, "divisor of q^m-1, or 'max'");
    count->add_option("--c", cfg.c, "trace label: 0, pow:i, or bare integer (s=1)");
    count->add_option("--quantity", cfg.quantity, "Z | P | I");
    count->add_option("--method", cfg.method, "formula | oracle | both");
    count->add_option("--hints", cfg.hints_path, "factorization hints file");

    CLI::App* table = app.add_subcommand("table", "quartic Mersenne zero-trace table");
    table->add_option("--exponents", cfg.exponents, "Mersenne exponents")->delimiter(',');
    table->add_option("--hints", cfg.hints_path, "factorization hints file");
    table->add_option("--format", cfg.format, "text | json | csv");
    table->add_option("--budget", cfg.budget, "rho budget override");

    CLI::App* verify = app.add_subcommand("verify", "formula-vs-oracle sweeps and identity suites");
    verify->add_option("--cap", cfg.cap, "largest field size in the sweep");
    verify->add_option("--q-list", cfg.q_list, "prime powers to sweep")->delimiter(',');
    verify->add_option("--workers", cfg.workers, "parallel workers");
    verify->add_option("--budget", cfg.budget, "per-field enumeration budget");
    verify->add_flag("--inject-fault", cfg.inject_fault, "self-test: force one mismatch");
    verify->add_option("--format", cfg.format, "text | json | csv");

    CLI::App* classify = app.add_subcommand("classify", "structural classification of (q, m)");
    add_field_opts(classify);

    CLI::App* periods = app.add_subcommand("periods", "dump a Gaussian period table as JSON");
    add_field_opts(periods);
    periods->add_option("--d", cfg.d, "divisor of q^m-1, or 'max'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : freetrace::cli::kExitUsage;
    }

    for (CLI::App* sub : {count, table, verify, classify, periods}) {
        if (sub->parsed()) cfg.subcommand = sub->get_name();
    }
    return freetrace::cli::run(cfg, std::cout, std::cerr);
}
