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

#ifndef FREETRACE_ERRORS_HPP
#define FREETRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace freetrace {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FREETRACE_DEFINE_ERROR(NAME)                                    \
    class NAME : public Error {                                         \
       public:                                                          \
        explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
    }

FREETRACE_DEFINE_ERROR(HintNotPrime);
FREETRACE_DEFINE_ERROR(HintNotDivisor);
FREETRACE_DEFINE_ERROR(FactorizationTimeout);
FREETRACE_DEFINE_ERROR(NotCoprime);
FREETRACE_DEFINE_ERROR(PDividesN);
FREETRACE_DEFINE_ERROR(CtxMismatch);
FREETRACE_DEFINE_ERROR(ZeroElement);
FREETRACE_DEFINE_ERROR(NotDivisor);
FREETRACE_DEFINE_ERROR(NotInSubfield);
FREETRACE_DEFINE_ERROR(PMismatch);
FREETRACE_DEFINE_ERROR(HypothesisNotMet);
FREETRACE_DEFINE_ERROR(NonIntegerResult);
FREETRACE_DEFINE_ERROR(NotMersenne);
FREETRACE_DEFINE_ERROR(BudgetExceeded);
FREETRACE_DEFINE_ERROR(ParseError);

#undef FREETRACE_DEFINE_ERROR

}  // namespace freetrace

#endif
