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

#ifndef FREETRACE_CLI_HPP
#define FREETRACE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "freetrace/verify.hpp"

namespace freetrace::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonInteger = 3;
inline constexpr int kExitBudget = 4;

struct RunConfig {
    std::string subcommand;

    unsigned long p = 0;
    unsigned s = 1;
    unsigned m = 1;
    std::string N = "max";
    std::string c = "0";
    std::string quantity = "Z";  // Z | P | I
    std::string method = "both"; // formula | oracle | both
    std::uint64_t budget = 0;    // 0 = use default / FREETRACE_BUDGET
    std::string hints_path;
    std::string format = "text"; // text | json | csv
    unsigned long seed = 0;

    // table
    std::vector<unsigned> exponents = {2, 3, 5, 7, 13, 17, 19, 31};

    // verify
    std::uint64_t cap = 10000;
    std::vector<std::uint64_t> q_list = {2, 3, 4, 5, 7, 8, 9};
    unsigned workers = 1;
    bool inject_fault = false;

    // periods
    std::string d = "1";
};

/// Parse a trace-label argument: "0", "pow:i", or a bare integer t
/// (meaning t*1, only valid when s = 1).
ff::SubLabel parse_label(const ff::FieldCtx& ctx, const std::string& text);

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_periods(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.subcommand with the exit-code conventions above.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Embedded reference values for the quartic Mersenne table, keyed by the
/// Mersenne exponent. The one place reference constants live.
const std::vector<std::pair<unsigned, std::string>>& mersenne_table();

}  // namespace freetrace::cli

#endif
