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

#ifndef FREETRACE_VERIFY_HPP
#define FREETRACE_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freetrace/formulas.hpp"

namespace freetrace::verify {

using Int = mpz_class;

struct Options {
    std::vector<std::uint64_t> q_list = {2, 3, 4, 5, 7, 8, 9, 11, 13};
    std::uint64_t cap = 300000;  // largest field size q^m included
    unsigned workers = 1;
    std::uint64_t budget = kSweepEnumBudget;
    std::uint64_t identity_cap = 10000;  // field size bound for the period identity suite
    bool run_identities = true;
    bool inject_fault = false;  // harness self-test: force one mismatch
};

struct Failure {
    std::string suite;
    std::string witness;
};

struct Report {
    std::uint64_t checks = 0;
    std::uint64_t z_matches = 0;
    std::uint64_t p_matches = 0;
    std::uint64_t zero_trace_matches = 0;
    std::uint64_t uniform_instances = 0;
    std::uint64_t relation_instances = 0;
    std::uint64_t existence_instances = 0;
    std::uint64_t identity_checks = 0;
    std::map<std::string, std::uint64_t> branch_hits;
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
    void merge(const Report& o);
    std::string summary() const;
};

/// (p, s, m) triples covered by the options: every q in q_list, every
/// m >= 2 with q^m <= cap.
std::vector<std::array<unsigned long, 3>> sweep_fields(const Options& opts);

/// Formula-vs-oracle equality on one field: Z and P at every divisor and
/// every trace label, the zero-trace theorem with branch dispatch, the
/// uniformity theorem, the order/zero-trace relation, and the existence
/// criterion.
Report check_field(unsigned long p, unsigned s, unsigned m, const Options& opts);

/// Period identity suite on one (small) field: row sums, integrality for
/// d | Q, the Delta identities, the coset-collapse identity, the cleared
/// f/Delta identity, and every closed-form period against the
/// character-sum value.
Report check_period_identities(unsigned long p, unsigned s, unsigned m, const Options& opts);

/// Full sweep across fields (optionally parallel); deterministic output
/// ordering regardless of worker count.
Report run_sweep(const Options& opts);

/// Irreducible-with-trace counts against exhaustive enumeration for all
/// prime powers q and degrees m with q^(m+1) <= cap; also checks that the
/// nonzero-trace counts are uniform.
Report run_carlitz_sweep(std::uint64_t cap);

/// Structural classifier agreement by brute force: the quartic Mersenne
/// criterion for all p^s <= 64, 2 <= m <= 8, and the radical equality for
/// b <= 9, m <= 8.
Report run_classifier_checks();

/// Recompute counts under a different primitive element and insist they
/// are unchanged.
Report check_alpha_invariance(unsigned long p, unsigned s, unsigned m, const Options& opts);

}  // namespace freetrace::verify

#endif
