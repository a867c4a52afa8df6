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

#ifndef FREETRACE_FORMULAS_HPP
#define FREETRACE_FORMULAS_HPP

#include "freetrace/gauss.hpp"
#include "freetrace/oracle.hpp"

namespace freetrace::formulas {

using Int = mpz_class;
using oracle::CountReport;

/// Largest divisor of N coprime to Q (the K_Q of the zero-trace count).
Int coprime_part(const nt::Factored& N_f, const Int& Q);

/// Smallest positive divisor D of q-1 such that (q-1)/D is coprime to Q.
Int smallest_coprime_cofactor(const ff::FieldCtx& ctx);

/// L_Q = D*Q: the largest divisor of q^m-1 with the same radical as Q.
Int largest_same_radical(const ff::FieldCtx& ctx);

/// Exact division; NonIntegerResult on any remainder (integrality is a
/// theorem, so a remainder means a bug, not data).
Int exact_div(const Int& num, const Int& den);

/// Z_{q,m,N}(c) through the twisted Delta sum:
/// Z = (1/q) ((q^m-1)/N phi(N) + f_0(N, c, Delta)).
CountReport z_general(gauss::PeriodBank& bank, const Int& N, const ff::SubLabel& c);

/// Zero-trace count collapsed to the gcd(Q, N) part:
/// Z(0) = (q-1) phi(K_Q)/(q K_Q) (Q/g phi(g) + Delta_0(g)), g = gcd(Q, N).
CountReport z_zero(gauss::PeriodBank& bank, const Int& N);

/// Zero-trace count with special-case dispatch (branch recorded):
/// coprime -> q-prime -> gcd-2 -> gcd-3 -> semi-primitive -> general.
/// All special branches are closed forms needing no enumeration.
CountReport z_zero_special(gauss::PeriodBank& bank, const Int& N);

/// Primitive elements with trace zero:
/// Z(0) = D phi((q-1)/D) (phi(Q) + Delta_0(Q)) / q.
CountReport z_primitive_zero(gauss::PeriodBank& bank);

/// Primitive elements of F_{p^4} with absolute trace zero for a Mersenne
/// prime p: (phi(p^4-1) - phi((p^4-1)/(p+1))) / p. Pure arithmetic, no
/// field construction; hints speed up the p^2+1 factorization.
CountReport z_mersenne_quartic(const Int& p, const std::vector<Int>& hints = {},
                               std::uint64_t rho_budget = nt::kDefaultRhoBudget);

/// Uniform nonzero-trace count, valid when Rad(N) | Q:
/// Z(c != 0) = ((q^m-1)/N phi(N) - Z(0)) / (q-1), independent of c.
/// When the semi-primitive closed form for Delta_0 applies it is also
/// evaluated directly and cross-checked.
CountReport z_nonzero_uniform(gauss::PeriodBank& bank, const Int& N, const ff::SubLabel& c);

/// Delta_0(N) recovered from subfield counts two ways (both verified):
/// Delta_0 = Z_t(0) - Z_t(c != 0) and Delta_0 = (q Z_q(0) - t Z_t(0))/(q - t).
/// bank_q and bank_t realize the same F_{p^(sm)} over F_q and a proper
/// subfield F_t.
struct SubfieldDeltaReport {
    Int delta0;
    Int z_t_zero, z_t_nonzero;
    Int z_q_zero;
};
SubfieldDeltaReport delta0_subfield(gauss::PeriodBank& bank_q, gauss::PeriodBank& bank_t,
                                    const Int& N);

/// P_{q,m,N}(c) = (1/q) (phi(N) + sum_i conj(chi_q(alpha^(Qi) c)) Gamma_{Qi}(N)).
CountReport p_general(gauss::PeriodBank& bank, const Int& N, const ff::SubLabel& c);

/// P(0) = N Z(0) / (q^m-1), valid when DQ | N; exact divisibility asserted.
CountReport p_from_relation(gauss::PeriodBank& bank, const Int& N);

/// Existence of an order-N element with trace zero, for L_Q | N, m > 1:
/// true iff m != 2 and (q, m) != (4, 3).
bool exists_order_trace_zero(const ff::FieldCtx& ctx, const Int& N);

/// Elements of order 2Q = 2(p+1)(p^2+1) with absolute trace zero in
/// F_{p^4}, p a Mersenne prime: 2 phi(p^2+1).
CountReport order_2q_mersenne(const Int& p, const std::vector<Int>& hints = {},
                              std::uint64_t rho_budget = nt::kDefaultRhoBudget);

/// Monic irreducible polynomials of degree m over F_q (q = p^s) with
/// prescribed trace: the classical Moebius count. Nonzero traces share one
/// value; the zero-trace value comes from the total.
CountReport carlitz(const Int& p, unsigned s, unsigned m, bool c_is_zero);

}  // namespace freetrace::formulas

#endif
