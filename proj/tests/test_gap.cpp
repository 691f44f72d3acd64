#include <doctest.h>

#include <random>

#include "dioph/error.hpp"
#include "dioph/gap.hpp"
#include "dioph/search.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dioph;

namespace
{

RingElem E(const RingSpec &s, long u, long v = 0)
{
    return RingElem(s, u, v);
}

Int ipow(const Int &b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// |x - y| for reals x = sqrt(1 + 1/n), y = p/q, directly in MPFR at 200 bits.
double direct_gap(long n, long p, long q)
{
    mpfr_t x, y;
    mpfr_init2(x, 200);
    mpfr_init2(y, 200);
    mpfr_set_si(x, n, MPFR_RNDN);
    mpfr_ui_div(x, 1, x, MPFR_RNDN);
    mpfr_add_ui(x, x, 1, MPFR_RNDN);
    mpfr_sqrt(x, x, MPFR_RNDN);
    mpfr_set_si(y, p, MPFR_RNDN);
    mpfr_div_si(y, y, q, MPFR_RNDN);
    mpfr_sub(x, x, y, MPFR_RNDN);
    mpfr_abs(x, x, MPFR_RNDN);
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(y);
    return out;
}

bool encloses(const Interval &iv, double v, double rel = 1e-12)
{
    return mpfr_get_d(iv.lo(), MPFR_RNDD) <= v * (1 + rel) && mpfr_get_d(iv.hi(), MPFR_RNDU) >= v * (1 - rel);
}

} // namespace

TEST_CASE("gap constants")
{
    CHECK(gap_constant_sq() == ipow(4728, 40));
    CHECK(gap_constant_sq(quoted_gap_constant_base) == ipow(4278, 40));
}

TEST_CASE("approximation constants from squared absolute values")
{
    // |a1| = 3, |a2| = 1, |a1 - a2| = 2, |T| = 100
    GapReport r = jz_quantities(JzInput{9, 1, 4, 10000});
    CHECK(r.l_gt_one);
    CHECK(r.L.contains(mpq_class(254043, 576)));
    CHECK(r.m_abs_sq == 9);
    // l = 27/64 * 100/97, p^2 = 209/194
    CHECK(r.l.contains(mpq_class(2700, 6208)));
    CHECK(square(r.p).contains(mpq_class(209, 194)));
    CHECK(r.p_within_sqrt_21_16);
    CHECK(r.l_below_half);

    CHECK_THROWS_AS(jz_quantities(JzInput{9, 1, 4, 9}), Error);
    try
    {
        jz_quantities(JzInput{9, 1, 4, 9});
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::DegenerateInput);
    }
    try
    {
        jz_quantities(JzInput{9, 9, 0, 1000});
        FAIL("expected DegenerateInput");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::DegenerateInput);
    }
    // |T| barely above M leaves L < 1.
    try
    {
        jz_quantities(JzInput{9, 1, 4, 16});
        FAIL("expected TheoremInapplicable");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::TheoremInapplicable);
    }
}

TEST_CASE("exact flags agree with the enclosures")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 200; ++k)
    {
        Int a1 = 1 + Int(std::to_string(rng() % 200)), a2 = 1 + Int(std::to_string(rng() % 200));
        Int diff = 1 + Int(std::to_string(rng() % 200));
        Int t = std::max(a1, a2) * (2 + Int(std::to_string(rng() % 100000)));
        try
        {
            GapReport r = jz_quantities(JzInput{a1, a2, diff, t});
            CHECK(r.L.certainly_greater(mpq_class(1)));
            mpq_class bound(21, 16);
            if (r.p_within_sqrt_21_16)
                CHECK_FALSE(square(r.p).certainly_greater(bound));
            else
                CHECK_FALSE(square(r.p).certainly_less(bound));
            if (r.l_below_half)
                CHECK_FALSE(r.l.certainly_greater(mpq_class(1, 2)));
            else
                CHECK_FALSE(r.l.certainly_less(mpq_class(1, 2)));
        }
        catch (const Error &e)
        {
            CHECK((e.code() == Errc::TheoremInapplicable || e.code() == Errc::DegenerateInput));
        }
    }
}

TEST_CASE("gap principle hypotheses")
{
    RingSpec g(-1);
    try
    {
        gap_principle(E(g, 1), E(g, 2), E(g, 3));
        FAIL("expected PreconditionViolated");
    }
    catch (const PreconditionError &e)
    {
        CHECK(e.failed() == std::vector<std::string>{"|ac| >= 9", "|b| > 5", "|c| > |b|^15"});
    }
    auto hyp = gap_hypotheses(E(g, 2), E(g, 2), E(g, 3));
    CHECK_FALSE(hyp[1].holds);
}

TEST_CASE("gap principle on an admissible input")
{
    RingSpec g(-1);
    RingElem a = E(g, 2), b = E(g, 6);
    RingElem c = RingElem(g, ipow(6, 15) + 1, 0);
    GapPrinciple gp = gap_principle(a, b, c);
    CHECK(gp.bound_abs_sq == ipow(4728, 40) * ipow(abs_sq(c), 50));
    CHECK(gp.lambda_in_range);
    CHECK(gp.lambda_inequality);
    CHECK(gp.lambda_lhs.certainly_less(gp.lambda_rhs));
    CHECK(gp.jz.p_within_sqrt_21_16);
    CHECK(gp.jz.l_below_half);
}

TEST_CASE("gap principle on random admissible inputs")
{
    std::mt19937_64 rng(97);
    for (int k = 0; k < 30; ++k)
    {
        RingSpec s(oracle::test_rings()[k % 5]);
        auto in = gen::admissible(rng, s);
        GapPrinciple gp = gap_principle(in.a, in.b, in.c);
        CHECK(gp.lambda_in_range);
        CHECK(gp.lambda_inequality);
        CHECK(gp.jz.lambda.certainly_greater(mpq_class(1)));
        CHECK(gp.jz.lambda.certainly_less(mpq_class(19, 10)));
    }
}

TEST_CASE("approximation lemma")
{
    RingSpec g(-1);
    // {2, 4, 420} extended by 12: x = 5, y = 7, z = 71; s = 29, t = 41.
    PellSystem sys = build_system(E(g, 2), E(g, 4), E(g, 420));
    PellSolution sol = solution_from_extension(sys, E(g, 12));
    CHECK(sol.z == E(g, 71));
    ApproxReport r = approx_check(sys, sol);
    CHECK(r.theta1.lhs_le_middle);
    CHECK(r.theta1.middle_lt_rhs);
    CHECK(r.theta2.lhs_le_middle);
    CHECK(r.theta2.middle_lt_rhs);
    CHECK(encloses(r.theta1.lhs, direct_gap(2 * 420, 29 * 5, 2 * 71)));
    CHECK(encloses(r.theta2.lhs, direct_gap(4 * 420, 41 * 7, 4 * 71)));

    // |a| = 1
    PellSystem unit = build_system(E(g, 1), E(g, 8), E(g, 120));
    try
    {
        approx_check(unit, solution_from_extension(unit, E(g, 3)));
        FAIL("expected PreconditionViolated");
    }
    catch (const PreconditionError &e)
    {
        CHECK(e.failed() == std::vector<std::string>{"|a| >= 2"});
    }
    // |c| <= 4|b|: {2, 4, 12}
    PellSystem close = build_system(E(g, 2), E(g, 4), E(g, 12));
    try
    {
        approx_check(close, PellSolution{E(g, 1), E(g, 1), E(g, 1)});
        FAIL("expected PreconditionViolated");
    }
    catch (const PreconditionError &e)
    {
        CHECK(e.failed().front() == "|c| > 4|b|");
    }
}

TEST_CASE("approximation lemma on complex quadruples")
{
    for (auto d : {-1L, -2L, -3L, -7L})
    {
        RingSpec s(d);
        for (const auto &q : find_m_tuples(SearchConfig{s, 1024, 4, 4, SearchMode::find_all, 0}).tuples)
        {
            // Use the three smallest as {a, b, c} when the lemma applies.
            PellSystem sys = build_system(q[0], q[1], q[2]);
            if (!(abs_sq(sys.c) > 16 * abs_sq(sys.b)))
                continue;
            ApproxReport r = approx_check(sys, solution_from_extension(sys, q[3]));
            CHECK(r.theta1.lhs_le_middle);
            CHECK(r.theta2.lhs_le_middle);
            CHECK(r.theta1.middle_lt_rhs);
            CHECK(r.theta2.middle_lt_rhs);
        }
    }
}

TEST_CASE("omega and stronger bound")
{
    RingSpec g(-1), e(-3);
    // |a| = 2: 64 abs_sq(d) >= 4 abs_sq(b)
    DiophTuple q = dioph::make_tuple(g, {E(g, 2), E(g, 4), E(g, 12), E(g, 420)});
    OmegaCheck om = omega_lower_bound(q);
    CHECK(om.holds);
    CHECK(om.margin == 64 * 420 * 420 - 4 * 16);
    StrongerBoundCheck sb = stronger_bound_check(q);
    CHECK(sb.excluded);
    CHECK(sb.margin == 420 * 420 - 16 * 4 * 16);
    CHECK_THROWS_AS(omega_lower_bound(dioph::make_tuple(g, {E(g, 1), E(g, 3), E(g, 8), E(g, 120)})), Error);
    CHECK_THROWS_AS(omega_lower_bound(dioph::make_tuple(e, {E(e, -2), E(e, 2), E(e, 2, 4)})), Error);
}

TEST_CASE("chain certificate")
{
    ChainCertificate c43 = chain_certificate(43);
    REQUIRE(c43.contradiction_at.has_value());
    CHECK(*c43.contradiction_at == 43);
    CHECK(c43.lower_bounds.at(25) == ipow(2, 134));
    // 16^64 / 8^63 = 2^67 on |.|
    CHECK(ipow(16, 64) / ipow(8, 63) == ipow(2, 67));
    CHECK(ipow(2, 67) > Int(1784000000));
    for (const auto &ch : c43.checks)
        CHECK_MESSAGE(ch.holds, ch.name);
    CHECK(*c43.upper_bound_rhs == ipow(4728, 40) * ipow(ipow(2, 134), 50));
    CHECK(c43.lower_bounds.at(43) > *c43.upper_bound_rhs);

    // Closed form: lb(a_{7+3k}) = 256^(2^k) / 64^(2^k - 1) on abs_sq.
    for (int k = 0; k <= 6; ++k)
    {
        unsigned long e = 1UL << k;
        CHECK(c43.lower_bounds.at(7 + 3 * k) == ipow(256, e) / ipow(64, e - 1));
    }
    Int prev = 0;
    for (const auto &[idx, lb] : c43.lower_bounds)
    {
        CHECK(lb >= prev);
        prev = lb;
    }

    ChainCertificate c42 = chain_certificate(42);
    CHECK_FALSE(c42.contradiction_at.has_value());
    CHECK(c42.lower_bounds.count(43) == 0);
    CHECK_FALSE(chain_certificate(25).contradiction_at.has_value());
    CHECK_THROWS_AS(chain_certificate(3), Error);
}

TEST_CASE("quoted threshold is too small for the larger constant")
{
    ChainCertificate c = chain_certificate(43);
    Int t(1784000000);
    Int t_sq = t * t;
    CHECK(ipow(t_sq, 14) >= ipow(64, 63) * gap_constant_sq(quoted_gap_constant_base));
    CHECK_FALSE(ipow(t_sq, 14) >= ipow(64, 63) * gap_constant_sq());
    CHECK(ipow(c.lower_bounds.at(25), 14) >= ipow(64, 63) * gap_constant_sq());
}
