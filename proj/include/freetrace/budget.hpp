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

#ifndef FREETRACE_BUDGET_HPP
#define FREETRACE_BUDGET_HPP

#include <cstdint>
#include <cstdlib>
#include <string>

namespace freetrace {

// Enumeration caps: exceeding one is an error, never silent truncation.
inline constexpr std::uint64_t kSweepEnumBudget = 2'000'000;
inline constexpr std::uint64_t kSingleEnumBudget = 10'000'000;

/// Default budget for one-off counts; FREETRACE_BUDGET overrides.
inline std::uint64_t default_enum_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("FREETRACE_BUDGET")) {
            try {
                return static_cast<std::uint64_t>(std::stoull(env));
            } catch (...) {
            }
        }
        return kSingleEnumBudget;
    }();
    return value;
}

}  // namespace freetrace

#endif
