#include "dioph/interval.hpp"

#include <algorithm>
#include <array>

namespace dioph
{

Interval::Interval(mpfr_prec_t prec) : prec_(prec)
{
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const mpz_class &x, mpfr_prec_t prec) : Interval(prec)
{
    mpfr_set_z(lo_, x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, x.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class &x, mpfr_prec_t prec) : Interval(prec)
{
    mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval &o) : Interval(o.prec_)
{
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval &&o) noexcept : Interval(o.prec_)
{
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval &Interval::operator=(Interval o) noexcept
{
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

bool Interval::contains(const mpq_class &x) const
{
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::certainly_less(const mpq_class &x) const
{
    return mpfr_cmp_q(hi_, x.get_mpq_t()) < 0;
}

bool Interval::certainly_greater(const mpq_class &x) const
{
    return mpfr_cmp_q(lo_, x.get_mpq_t()) > 0;
}

namespace
{

std::string to_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd)
{
    if (mpfr_zero_p(x))
        return "0";
    mpfr_exp_t exp = 0;
    char *raw = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), x, rnd);
    std::string s(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (s[0] == '-')
    {
        sign = "-";
        s.erase(0, 1);
    }
    // s = d1 d2 ... dn with value 0.d1d2...dn * 10^exp
    std::string mant = s.substr(0, 1);
    if (s.size() > 1)
        mant += "." + s.substr(1);
    return sign + mant + "e" + std::to_string(static_cast<long>(exp) - 1);
}

} // namespace

std::string Interval::lo_str(int digits) const
{
    return to_decimal(lo_, digits, MPFR_RNDD);
}

std::string Interval::hi_str(int digits) const
{
    return to_decimal(hi_, digits, MPFR_RNDU);
}

double Interval::mid_double() const
{
    return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

namespace
{

mpfr_prec_t joint_prec(const Interval &a, const Interval &b)
{
    return std::max(a.precision(), b.precision());
}

template <class Op>
Interval corners(const Interval &a, const Interval &b, Op op)
{
    Interval r(joint_prec(a, b));
    mpfr_t t;
    mpfr_init2(t, r.precision());
    std::array<mpfr_srcptr, 2> as{a.lo(), a.hi()};
    std::array<mpfr_srcptr, 2> bs{b.lo(), b.hi()};
    bool first = true;
    auto *lo = const_cast<mpfr_ptr>(r.lo());
    auto *hi = const_cast<mpfr_ptr>(r.hi());
    for (auto x : as)
    {
        for (auto y : bs)
        {
            op(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, lo))
                mpfr_set(lo, t, MPFR_RNDD);
            op(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, hi))
                mpfr_set(hi, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

void require_nonnegative(const Interval &a, const char *what)
{
    if (mpfr_sgn(a.lo()) < 0)
        throw Error(Errc::InvalidArgument, std::string(what) + " of an interval reaching below zero");
}

} // namespace

Interval operator+(const Interval &a, const Interval &b)
{
    Interval r(joint_prec(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval &a, const Interval &b)
{
    Interval r(joint_prec(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval &a, const Interval &b)
{
    return corners(a, b, [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_mul(t, x, y, rnd); });
}

Interval operator/(const Interval &a, const Interval &b)
{
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
        throw Error(Errc::InvalidArgument, "division by an interval containing zero");
    return corners(a, b, [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_div(t, x, y, rnd); });
}

Interval sqrt(const Interval &a)
{
    require_nonnegative(a, "sqrt");
    Interval r(a.prec_);
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval log(const Interval &a)
{
    if (mpfr_sgn(a.lo_) <= 0)
        throw Error(Errc::InvalidArgument, "log of an interval reaching zero");
    Interval r(a.prec_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval exp(const Interval &a)
{
    Interval r(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval pow_ratio(const Interval &a, unsigned long num, unsigned long den)
{
    require_nonnegative(a, "power");
    if (den == 0)
        throw Error(Errc::InvalidArgument, "zero root index");
    Interval r(a.prec_);
    mpfr_pow_ui(r.lo_, a.lo_, num, MPFR_RNDD);
    mpfr_rootn_ui(r.lo_, r.lo_, den, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, num, MPFR_RNDU);
    mpfr_rootn_ui(r.hi_, r.hi_, den, MPFR_RNDU);
    return r;
}

Interval max(const Interval &a, const Interval &b)
{
    Interval r(joint_prec(a, b));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval min(const Interval &a, const Interval &b)
{
    Interval r(joint_prec(a, b));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval square(const Interval &a)
{
    Interval r(a.prec_);
    if (mpfr_sgn(a.lo_) >= 0)
    {
        mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    }
    else if (mpfr_sgn(a.hi_) <= 0)
    {
        mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    }
    else
    {
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
        mpfr_sqr(t, a.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        mpfr_set_zero(r.lo_, 1);
    }
    return r;
}

} // namespace dioph
