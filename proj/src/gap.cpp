#include "dioph/gap.hpp"

#include <algorithm>

#include "dioph/error.hpp"

namespace dioph
{

Int gap_constant_sq(unsigned long base)
{
    Int k;
    mpz_ui_pow_ui(k.get_mpz_t(), base, 2 * gap_constant_exponent);
    return k;
}

namespace
{

Int pow_int(const Int &base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int pow_ui(unsigned long base, unsigned long e)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

Int cdiv(const Int &n, const Int &d)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Interval iv(const Int &x, mpfr_prec_t prec)
{
    return Interval(x, prec);
}

Interval iv(long x, mpfr_prec_t prec)
{
    return Interval(Int(x), prec);
}

// L > 1  <=>  27 (t - M)^2 > 16 X  with t = sqrt(TT), M = sqrt(MM), X = |a1|^2 |a2|^2 |a1-a2|^2.
bool l_exceeds_one(const Int &tt, const Int &mm, const Int &x)
{
    mpq_class r(Int(16) * x, Int(27));
    r.canonicalize();
    mpq_class gap = mpq_class(tt) - mpq_class(mm) - r;
    if (sgn(gap) <= 0)
        return false;
    return gap * gap > 4 * mpq_class(mm) * r;
}

std::optional<GapReport> jz_at(const JzInput &in, const Int &mm, bool l_gt_one, bool p_ok, bool l_half,
                               mpfr_prec_t prec)
{
    const Int x = in.a1_abs_sq * in.a2_abs_sq * in.diff_abs_sq;
    const Int min_sq = std::min({in.a1_abs_sq, in.a2_abs_sq, in.diff_abs_sq});

    Interval t = sqrt(iv(in.t_abs_sq, prec));
    Interval m = sqrt(iv(mm, prec));
    Interval t_minus_m = t - m;
    if (!t_minus_m.positive())
        return std::nullopt;
    Interval two_t_3m = iv(2, prec) * t + iv(3, prec) * m;

    Interval L = iv(27, prec) * square(t_minus_m) / iv(Int(16) * x, prec);
    Interval P = iv(Int(16) * x, prec) / pow_ratio(iv(min_sq, prec), 3, 2) * two_t_3m;
    Interval l = Interval(mpq_class(27, 64), prec) * t / t_minus_m;
    Interval p = sqrt(two_t_3m / (iv(2, prec) * t_minus_m));
    if (!P.positive() || !L.positive())
        return std::nullopt;
    Interval log_l = log(L);
    if (!log_l.positive())
        return std::nullopt;
    Interval lambda = iv(1, prec) + log(P) / log_l;
    Interval lambda_minus_one = lambda - iv(1, prec);
    if (mpfr_sgn(lambda_minus_one.lo()) < 0)
        return std::nullopt;
    Interval widest = max(iv(1, prec), iv(2, prec) * l);
    Interval c_inv = iv(4, prec) * p * P * exp(lambda_minus_one * log(widest));
    Interval c_const = iv(1, prec) / c_inv;

    return GapReport{in, mm, l_gt_one, p_ok, l_half, L, P, l, p, lambda, c_const, prec};
}

Interval ring_re(const RingElem &z, const Interval &sqrt_ad, mpfr_prec_t prec)
{
    if (z.spec().half_basis())
        return iv(z.u(), prec) - Interval(mpq_class(z.v(), 2), prec);
    (void)sqrt_ad;
    return iv(z.u(), prec);
}

Interval ring_im(const RingElem &z, const Interval &sqrt_ad, mpfr_prec_t prec)
{
    if (z.spec().half_basis())
        return Interval(mpq_class(z.v(), 2), prec) * sqrt_ad;
    return iv(z.v(), prec) * sqrt_ad;
}

struct CBox
{
    Interval re, im;
};

CBox box(const RingElem &z, const Int &denominator, const Interval &sqrt_ad, mpfr_prec_t prec)
{
    Interval den = iv(denominator, prec);
    return CBox{ring_re(z, sqrt_ad, prec) / den, ring_im(z, sqrt_ad, prec) / den};
}

CBox operator*(const CBox &a, const CBox &b)
{
    return CBox{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CBox operator-(const CBox &a, const CBox &b)
{
    return CBox{a.re - b.re, a.im - b.im};
}

CBox operator+(const CBox &a, const CBox &b)
{
    return CBox{a.re + b.re, a.im + b.im};
}

Interval norm_sq(const CBox &a)
{
    return square(a.re) + square(a.im);
}

// One square root of w; which one does not matter to the callers.
std::optional<CBox> csqrt(const CBox &w, mpfr_prec_t prec)
{
    Interval modulus = sqrt(norm_sq(w));
    Interval half(mpq_class(1, 2), prec);
    if (w.re.mid_double() >= 0)
    {
        Interval x = sqrt(max(Interval(prec), (modulus + w.re) * half));
        if (!x.positive())
            return std::nullopt;
        return CBox{x, w.im / (iv(2, prec) * x)};
    }
    Interval y = sqrt(max(Interval(prec), (modulus - w.re) * half));
    if (!y.positive())
        return std::nullopt;
    return CBox{w.im / (iv(2, prec) * y), y};
}

// Lemma side for theta = (s/e) sqrt(e/c) approximated by q = s w / (e z), where
// (e, w, s) is (a, x, s) or (b, y, t).  Returns lhs^2 and middle^2 enclosures.
struct ApproxSquares
{
    Interval lhs_sq, middle_sq, rhs_sq;
};

std::optional<ApproxSquares> approx_squares(const RingElem &e, const RingElem &w, const RingElem &root,
                                            const PellSystem &sys, const PellSolution &sol, mpfr_prec_t prec)
{
    const RingSpec &spec = e.spec();
    Interval sqrt_ad = sqrt(iv(Int(-spec.d()), prec));
    const Int E = abs_sq(e);
    const Int C = abs_sq(sys.c);
    const Int A = abs_sq(sys.a);
    const Int Z = abs_sq(sol.z);
    const Int R = abs_sq(root);
    const Int CE = abs_sq(sys.c - e);

    CBox root_over_e = box(root * conj(e), E, sqrt_ad, prec);
    CBox e_over_c = box(e * conj(sys.c), C, sqrt_ad, prec);
    auto sq = csqrt(e_over_c, prec);
    if (!sq)
        return std::nullopt;
    CBox theta = root_over_e * *sq;
    CBox q = box(root * w * conj(e) * conj(sol.z), E * Z, sqrt_ad, prec);
    Interval lhs_sq = min(norm_sq(theta - q), norm_sq(theta + q));

    // (|root| |c - e| / (|e| sqrt|ec|) / |z|^2)^2 = R CE / (E sqrt(E C) Z^2)
    Interval middle_sq = iv(R * CE, prec) / (iv(E, prec) * sqrt(iv(E * C, prec)) * iv(Z * Z, prec));
    // ((21/16) |c|/|a| / |z|^2)^2
    Interval rhs_sq = Interval(mpq_class(441, 256), prec) * iv(C, prec) / iv(A * Z * Z, prec);
    return ApproxSquares{lhs_sq, middle_sq, rhs_sq};
}

} // namespace

JzInput jz_input(const RingElem &a1, const RingElem &a2, const RingElem &t)
{
    require_same_ring(a1, a2);
    require_same_ring(a1, t);
    return JzInput{abs_sq(a1), abs_sq(a2), abs_sq(a1 - a2), abs_sq(t)};
}

GapReport jz_quantities(const JzInput &in)
{
    if (sgn(in.a1_abs_sq) <= 0 || sgn(in.a2_abs_sq) <= 0)
        throw Error(Errc::DegenerateInput, "a1 and a2 must be nonzero");
    if (sgn(in.diff_abs_sq) <= 0)
        throw Error(Errc::DegenerateInput, "a1 and a2 must be distinct");
    const Int mm = std::max(in.a1_abs_sq, in.a2_abs_sq);
    if (in.t_abs_sq <= mm)
        throw Error(Errc::DegenerateInput, "|T| must exceed M = max{|a1|, |a2|}");
    const Int x = in.a1_abs_sq * in.a2_abs_sq * in.diff_abs_sq;
    const bool l_gt_one = l_exceeds_one(in.t_abs_sq, mm, x);
    if (!l_gt_one)
        throw Error(Errc::TheoremInapplicable, "L <= 1");
    const bool p_ok = Int(81) * mm <= in.t_abs_sq;
    const bool l_half = Int(1024) * mm < Int(25) * in.t_abs_sq;
    return certify([&](mpfr_prec_t prec) { return jz_at(in, mm, l_gt_one, p_ok, l_half, prec); },
                   "approximation constants");
}

GapReport jz_quantities(const RingElem &a1, const RingElem &a2, const RingElem &t)
{
    return jz_quantities(jz_input(a1, a2, t));
}

std::vector<NamedCheck> gap_hypotheses(const RingElem &a, const RingElem &b, const RingElem &c)
{
    require_same_ring(a, b);
    require_same_ring(a, c);
    const Int A = abs_sq(a), B = abs_sq(b), C = abs_sq(c);
    return {
        {"|ac| >= 9", A * C >= 81},
        {"|b| >= 3/2 |a|", Int(4) * B >= Int(9) * A},
        {"|b| > 5", B > 25},
        {"|c| > |b|^15", C > pow_int(B, 15)},
    };
}

GapPrinciple gap_principle(const RingElem &a, const RingElem &b, const RingElem &c)
{
    auto hyp = gap_hypotheses(a, b, c);
    std::vector<std::string> failed;
    for (const auto &h : hyp)
    {
        if (!h.holds)
            failed.push_back(h.name);
    }
    if (!failed.empty())
        throw PreconditionError(failed);

    const Int A = abs_sq(a), B = abs_sq(b), C = abs_sq(c);
    const Int BA = abs_sq(b - a);
    const JzInput in = jz_input(b, a, a * b * c);
    GapReport jz = jz_quantities(in);

    const Int mm = std::max(in.a1_abs_sq, in.a2_abs_sq);
    bool lambda_ok = certify(
        [&](mpfr_prec_t prec) -> std::optional<bool> {
            auto r = jz_at(in, mm, jz.l_gt_one, jz.p_within_sqrt_21_16, jz.l_below_half, prec);
            if (!r)
                return std::nullopt;
            mpq_class one(1), upper(19, 10);
            if (r->lambda.certainly_greater(one) && r->lambda.certainly_less(upper))
                return true;
            if (!r->lambda.certainly_greater(one) && !r->lambda.contains(one))
                return false;
            if (!r->lambda.certainly_less(upper) && !r->lambda.contains(upper))
                return false;
            return std::nullopt;
        },
        "1 < lambda < 1.9");

    // 210 |b|^3 |b-a|^3.8 |a|^0.8 < (|ac| - 1)^0.8, on squared absolute values:
    // |b|^3 = B^(3/2), |b-a|^3.8 = BA^(19/10), |a|^0.8 = A^(2/5), |ac| = sqrt(AC).
    Interval lhs(interval_start_bits), rhs(interval_start_bits);
    bool ineq_ok = certify(
        [&](mpfr_prec_t prec) -> std::optional<bool> {
            Interval l = iv(210, prec) * pow_ratio(iv(B, prec), 3, 2) * pow_ratio(iv(BA, prec), 19, 10) *
                         pow_ratio(iv(A, prec), 2, 5);
            Interval base = sqrt(iv(A * C, prec)) - iv(1, prec);
            if (mpfr_sgn(base.lo()) < 0)
                return std::nullopt;
            Interval r = pow_ratio(base, 4, 5);
            lhs = l;
            rhs = r;
            if (l.certainly_less(r))
                return true;
            if (mpfr_greaterequal_p(l.lo(), r.hi()))
                return false;
            return std::nullopt;
        },
        "lambda inequality");

    Int bound = gap_constant_sq() * pow_int(C, 50);
    return GapPrinciple{std::move(bound), std::move(hyp), std::move(jz), lambda_ok, ineq_ok, lhs, rhs};
}

ApproxReport approx_check(const PellSystem &sys, const PellSolution &sol)
{
    std::vector<std::string> failed;
    if (!(abs_sq(sys.c) > Int(16) * abs_sq(sys.b)))
        failed.emplace_back("|c| > 4|b|");
    if (abs_sq(sys.a) < 4)
        failed.emplace_back("|a| >= 2");
    if (!solves_system(sys, sol))
        failed.emplace_back("(x, y, z) solves the system");
    if (!failed.empty())
        throw PreconditionError(failed);

    const Int A = abs_sq(sys.a), B = abs_sq(sys.b), C = abs_sq(sys.c);
    const Int S = abs_sq(sys.s), T = abs_sq(sys.t);
    const Int CA = abs_sq(sys.c - sys.a), CB = abs_sq(sys.c - sys.b);
    // middle < rhs, squared and cleared of denominators:
    //   theta1: 256 S CA < 441 C sqrt(AC)
    //   theta2: 256 A T CB < 441 B C sqrt(BC)
    const bool mid_rhs_1 = sgn(S * CA) == 0 || pow_int(Int(256) * S * CA, 2) < pow_int(Int(441) * C, 2) * A * C;
    const bool mid_rhs_2 =
        sgn(T * CB) == 0 || pow_int(Int(256) * A * T * CB, 2) < pow_int(Int(441) * B * C, 2) * B * C;

    auto side = [&](const RingElem &e, const RingElem &w, const RingElem &root, bool mid_rhs) {
        return certify(
            [&](mpfr_prec_t prec) -> std::optional<ApproxBound> {
                auto sq = approx_squares(e, w, root, sys, sol, prec);
                if (!sq)
                    return std::nullopt;
                bool le;
                if (mpfr_lessequal_p(sq->lhs_sq.hi(), sq->middle_sq.lo()))
                    le = true;
                else if (mpfr_greater_p(sq->lhs_sq.lo(), sq->middle_sq.hi()))
                    le = false;
                else
                    return std::nullopt;
                return ApproxBound{sqrt(sq->lhs_sq), sqrt(sq->middle_sq), sqrt(sq->rhs_sq), le, mid_rhs};
            },
            "approximation inequality");
    };
    return ApproxReport{side(sys.a, sol.x, sys.s, mid_rhs_1), side(sys.b, sol.y, sys.t, mid_rhs_2)};
}

ApproxReport approx_check(const RingElem &a, const RingElem &b, const RingElem &c, const PellSolution &sol)
{
    return approx_check(build_system(a, b, c), sol);
}

namespace
{

void require_quadruple_of_large(const DiophTuple &quad)
{
    if (quad.size() != 4)
        throw Error(Errc::NotAQuadruple, "expected 4 elements, got " + std::to_string(quad.size()));
    for (const auto &e : quad.elems())
    {
        if (abs_sq(e) < 4)
            throw PreconditionError({"|a| >= 2"});
    }
}

} // namespace

OmegaCheck omega_lower_bound(const DiophTuple &quad)
{
    require_quadruple_of_large(quad);
    Int margin = Int(64) * abs_sq(quad[3]) - abs_sq(quad[0]) * abs_sq(quad[1]);
    return OmegaCheck{sgn(margin) >= 0, margin};
}

StrongerBoundCheck stronger_bound_check(const DiophTuple &quad)
{
    require_quadruple_of_large(quad);
    auto cand = quadruple_extension_candidates(quad[0], quad[1], quad[2]);
    const RingElem &d = quad[3];
    bool excluded = std::find(cand.verified.begin(), cand.verified.end(), d) != cand.verified.end() ||
                    std::find(cand.rejected.begin(), cand.rejected.end(), d) != cand.rejected.end();
    Int margin = abs_sq(d) - Int(16) * abs_sq(quad[0]) * abs_sq(quad[1]);
    return StrongerBoundCheck{excluded, sgn(margin) >= 0, margin};
}

ChainCertificate chain_certificate(int m)
{
    if (m < 4)
        throw Error(Errc::InvalidArgument, "m must be at least 4");
    ChainCertificate cert{m, {}, {}, gap_constant_sq(), std::nullopt, std::nullopt, {}};
    auto &lb = cert.lower_bounds;
    const Int sixty_four(64);

    // No quintuple has all elements of absolute value <= 16, so |a_5| >= 16;
    // |a_4| >= 2 because fewer than four elements have absolute value < 2.
    lb[4] = 4;
    if (m >= 5)
        lb[5] = 256;
    if (m >= 7)
        lb[7] = lb[5];

    auto run = [&](int from, int to) {
        for (int k = from; k + 3 <= std::min(to, m); k += 3)
        {
            lb[k + 3] = cdiv(lb[k] * lb[k], sixty_four);
            cert.steps.emplace_back(k, k + 3);
        }
    };
    run(7, 25);
    if (m < 26)
        return cert;

    // Gap principle on {a_4, a_7, a_25, a_{25+k}}.
    const Int &lb4 = lb[4], &lb5 = lb[5], &lb7 = lb[7], &lb25 = lb[25];
    cert.checks.push_back({"|a_4| >= 2", lb4 >= 4});
    // |a_7| >= |a_4 a_5|/8 >= 2|a_4|
    cert.checks.push_back({"|a_7| >= 3/2 |a_4|", Int(4) * lb5 >= Int(9) * sixty_four});
    cert.checks.push_back({"|a_7| > 5", lb7 > 25});
    cert.checks.push_back({"|a_4 a_25| >= 9", lb4 * lb25 >= 81});
    // |a_25| >= |a_7|^64 / 8^63 > |a_7|^15  <=>  |a_7|^49 > 8^63, true for |a_7| >= 16
    cert.checks.push_back({"|a_25| > |a_7|^15", pow_int(lb7, 49) > pow_int(sixty_four, 63)});

    cert.upper_bound_rhs = cert.gap_constant_sq * pow_int(lb25, 50);
    run(25, 43);

    Int threshold(1784000000);
    threshold *= threshold;
    cert.checks.push_back({"|a_25| >= 2^67", lb25 >= pow_ui(2, 134)});
    cert.checks.push_back({"2^67 > 1.784e9", pow_ui(2, 134) > threshold});
    cert.checks.push_back({"1.784e9 suffices for K = 4278^20",
                           pow_int(threshold, 14) >= pow_int(sixty_four, 63) * gap_constant_sq(quoted_gap_constant_base)});

    if (m >= 43)
    {
        // |a_43| >= |a_25|^64/8^63 >= K |a_25|^50 once |a_25|^14 >= 8^63 K, and
        // the left side only grows with |a_25|.
        bool monotone = pow_int(lb25, 14) >= pow_int(sixty_four, 63) * cert.gap_constant_sq;
        bool exceeds = lb[43] > *cert.upper_bound_rhs;
        cert.checks.push_back({"|a_25|^14 >= 8^63 K", monotone});
        cert.checks.push_back({"lb(|a_43|) > K lb(|a_25|)^50", exceeds});
        bool all = std::all_of(cert.checks.begin(), cert.checks.end(), [](const NamedCheck &c) { return c.holds; });
        if (all)
            cert.contradiction_at = 43;
    }
    return cert;
}

} // namespace dioph
