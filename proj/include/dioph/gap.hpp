#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dioph/interval.hpp"
#include "dioph/pell.hpp"
#include "dioph/ring.hpp"
#include "dioph/tuples.hpp"

namespace dioph
{

// Gap-principle constant K = base^exponent.  The derivation yields 4728; the
// constant as usually quoted is 4278.  Everything here uses 4728.
inline constexpr unsigned long gap_constant_base = 4728;
inline constexpr unsigned long quoted_gap_constant_base = 4278;
inline constexpr unsigned long gap_constant_exponent = 20;

// K^2 for the given base (bounds are carried on abs_sq).
Int gap_constant_sq(unsigned long base = gap_constant_base);

struct NamedCheck
{
    std::string name;
    bool holds;
};

// Squared absolute values feeding the simultaneous-approximation bound for
// sqrt(1 + a1/T), sqrt(1 + a2/T).
struct JzInput
{
    Int a1_abs_sq;
    Int a2_abs_sq;
    Int diff_abs_sq; // |a1 - a2|^2
    Int t_abs_sq;
};

JzInput jz_input(const RingElem &a1, const RingElem &a2, const RingElem &t);

/*
 * L, P, l, p, lambda and c of the simultaneous-approximation theorem:
 *
 *   L = 27 (|T| - M)^2 / (16 |a1|^2 |a2|^2 |a1-a2|^2)
 *   P = 16 |a1|^2 |a2|^2 |a1-a2|^2 / min{|a1|,|a2|,|a1-a2|}^3 * (2|T| + 3M)
 *   l = 27/64 * |T| / (|T| - M)
 *   p = sqrt((2|T| + 3M) / (2|T| - 2M))
 *   lambda = 1 + log P / log L,   1/c = 4 p P max{1, 2l}^(lambda - 1)
 *
 * with M = max{|a1|, |a2|}.  The comparisons L > 1, p^2 <= 21/16 and l < 1/2
 * are decided exactly; the intervals are enclosures at `precision` bits.
 */
struct GapReport
{
    JzInput input;
    Int m_abs_sq;
    bool l_gt_one;
    bool p_within_sqrt_21_16;
    bool l_below_half;
    Interval L, P, l, p, lambda, c_const;
    mpfr_prec_t precision;
};

// Throws DegenerateInput (a1 = a2, a zero a_i, or |T| <= M) and
// TheoremInapplicable (L <= 1).
GapReport jz_quantities(const JzInput &in);
GapReport jz_quantities(const RingElem &a1, const RingElem &a2, const RingElem &t);

struct GapPrinciple
{
    // Upper bound on abs_sq(d) for any d extending {a, b, c}: K^2 abs_sq(c)^50.
    Int bound_abs_sq;
    std::vector<NamedCheck> hypotheses;
    GapReport jz; // a1 = b, a2 = a, T = abc
    bool lambda_in_range;  // 1 < lambda < 1.9, certified
    bool lambda_inequality; // 210 |b|^3 |b-a|^3.8 |a|^0.8 < (|ac| - 1)^0.8, certified
    Interval lambda_lhs, lambda_rhs;
};

// Hypotheses: |ac| >= 9, |b| >= 3/2 |a|, |b| > 5, |c| > |b|^15, all decided on
// abs_sq.  Throws PreconditionError listing every failing one.
GapPrinciple gap_principle(const RingElem &a, const RingElem &b, const RingElem &c);

std::vector<NamedCheck> gap_hypotheses(const RingElem &a, const RingElem &b, const RingElem &c);

// One side of the approximation lemma: lhs <= middle < rhs.
struct ApproxBound
{
    Interval lhs, middle, rhs;
    bool lhs_le_middle;
    bool middle_lt_rhs;
};

struct ApproxReport
{
    ApproxBound theta1; // sqrt(1 + 1/(ac)) approximated by sx/(az)
    ApproxBound theta2; // sqrt(1 + 1/(bc)) approximated by ty/(bz)
};

// Requires |c| > 4|b|, |a| >= 2 and a solution of the system.
ApproxReport approx_check(const PellSystem &sys, const PellSolution &sol);
ApproxReport approx_check(const RingElem &a, const RingElem &b, const RingElem &c, const PellSolution &sol);

struct OmegaCheck
{
    bool holds;  // 64 abs_sq(d) >= abs_sq(a) abs_sq(b)
    Int margin;  // 64 abs_sq(d) - abs_sq(a) abs_sq(b)
};

// For a quadruple with every abs_sq >= 4: |d| >= |ab|/8.
OmegaCheck omega_lower_bound(const DiophTuple &quad);

// The conjectured |d| >= 4|ab| unless d = a+b+c+2abc +- 2rst.  Violations are
// data, not errors.
struct StrongerBoundCheck
{
    bool excluded; // d is one of the regular quadruple extensions of {a, b, c}
    bool holds;    // abs_sq(d) >= 16 abs_sq(a) abs_sq(b)
    Int margin;
};

StrongerBoundCheck stronger_bound_check(const DiophTuple &quad);

/*
 * Lower bounds on abs_sq(a_k) for an m-tuple sorted by absolute value, starting
 * from abs_sq(a_4) >= 4 and abs_sq(a_5) >= 256 and stepping
 * lb(a_{k+3}) = lb(a_k)^2 / 64 along 7, 10, ..., 25 and 25, 28, ..., 43.  At
 * m >= 43 the bound on a_43 exceeds the gap-principle bound K^2 lb(a_25)^50.
 */
struct ChainCertificate
{
    int m;
    std::map<int, Int> lower_bounds;
    std::vector<std::pair<int, int>> steps;
    Int gap_constant_sq;
    std::optional<Int> upper_bound_rhs; // K^2 lb(a_25)^50, once a_26 exists
    std::optional<int> contradiction_at;
    std::vector<NamedCheck> checks;
};

ChainCertificate chain_certificate(int m);

} // namespace dioph
