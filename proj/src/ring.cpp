#include "dioph/ring.hpp"

#include <algorithm>
#include <sstream>

#include "dioph/detail/closed_form_sqrt.hpp"
#include "dioph/error.hpp"

namespace dioph
{

bool is_squarefree(std::int64_t n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
    {
        if (n % (p * p) == 0)
            return false;
    }
    return true;
}

RingSpec::RingSpec(std::int64_t d) : d_(d), half_(((d % 4) + 4) % 4 == 1)
{
    if (d >= 0 || !is_squarefree(d))
        throw Error(Errc::InvalidArgument, "d must be a negative squarefree integer, got " + std::to_string(d));
}

void require_same_ring(const RingElem &a, const RingElem &b)
{
    if (!(a.spec() == b.spec()))
    {
        throw Error(Errc::MixedRings, "elements of Q(sqrt(" + std::to_string(a.spec().d()) + ")) and Q(sqrt(" +
                                          std::to_string(b.spec().d()) + "))");
    }
}

RingElem &RingElem::operator+=(const RingElem &o)
{
    require_same_ring(*this, o);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

RingElem &RingElem::operator-=(const RingElem &o)
{
    require_same_ring(*this, o);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

RingElem &RingElem::operator*=(const RingElem &o)
{
    *this = *this * o;
    return *this;
}

RingElem operator+(RingElem a, const RingElem &b)
{
    a += b;
    return a;
}

RingElem operator-(RingElem a, const RingElem &b)
{
    a -= b;
    return a;
}

RingElem operator-(const RingElem &a)
{
    return RingElem(a.spec(), -a.u(), -a.v());
}

RingElem operator*(const RingElem &a, const RingElem &b)
{
    require_same_ring(a, b);
    const RingSpec &spec = a.spec();
    Int vv = a.v() * b.v();
    Int cross = a.u() * b.v() + a.v() * b.u();
    if (spec.half_basis())
    {
        // w^2 = -w + (d-1)/4
        Int u = a.u() * b.u() - vv * spec.norm_v2();
        return RingElem(spec, std::move(u), cross - vv);
    }
    Int u = a.u() * b.u() - vv * spec.norm_v2();
    return RingElem(spec, std::move(u), std::move(cross));
}

RingElem operator*(const Int &k, const RingElem &a)
{
    return RingElem(a.spec(), k * a.u(), k * a.v());
}

Int abs_sq(const RingElem &z)
{
    const RingSpec &spec = z.spec();
    Int r = z.u() * z.u() + Int(spec.norm_v2()) * z.v() * z.v();
    if (spec.half_basis())
        r -= z.u() * z.v();
    return r;
}

std::strong_ordering cmp_abs(const RingElem &z1, const RingElem &z2)
{
    require_same_ring(z1, z2);
    int c = cmp(abs_sq(z1), abs_sq(z2));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

RingElem conj(const RingElem &z)
{
    if (z.spec().half_basis())
        return RingElem(z.spec(), z.u() - z.v(), -z.v());
    return RingElem(z.spec(), z.u(), -z.v());
}

bool is_unit(const RingElem &z)
{
    return abs_sq(z) == 1;
}

std::strong_ordering canonical_cmp(const RingElem &a, const RingElem &b)
{
    auto to_ord = [](int c) {
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    };
    if (int c = cmp(abs_sq(a), abs_sq(b)); c != 0)
        return to_ord(c);
    if (int c = cmp(a.u(), b.u()); c != 0)
        return to_ord(c);
    return to_ord(cmp(a.v(), b.v()));
}

std::vector<RingElem> sqrt_in_ring(const RingElem &w)
{
    const RingSpec &spec = w.spec();
    Int u, v;
    int n = detail::closed_form_sqrt<Int>(spec.d(), spec.half_basis(), w.u(), w.v(), u, v);
    std::vector<RingElem> roots;
    if (n == 0)
        return roots;
    roots.emplace_back(spec, u, v);
    if (n == 2)
    {
        roots.emplace_back(spec, -u, -v);
        std::sort(roots.begin(), roots.end(), CanonicalLess{});
    }
    return roots;
}

std::optional<RingElem> divide_exact(const RingElem &num, const RingElem &den)
{
    require_same_ring(num, den);
    if (den.is_zero())
        throw Error(Errc::ZeroElement, "division by zero");
    Int n = abs_sq(den);
    RingElem t = num * conj(den);
    if (!mpz_divisible_p(t.u().get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(t.v().get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    Int qu, qv;
    mpz_divexact(qu.get_mpz_t(), t.u().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(qv.get_mpz_t(), t.v().get_mpz_t(), n.get_mpz_t());
    return RingElem(num.spec(), std::move(qu), std::move(qv));
}

namespace
{

Int isqrt(const Int &n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Rows of the norm-form ellipse abs_sq <= bound: for each v, the u with
// abs_sq(u + v w) <= bound form one contiguous range [lo, hi].
template <class Visit>
void for_each_row(const RingSpec &spec, const Int &bound, Visit &&visit)
{
    if (sgn(bound) < 0)
        return;
    const Int ad(-spec.d());
    if (spec.half_basis())
    {
        // 4 abs_sq = (2u - v)^2 + |d| v^2
        Int four_b = 4 * bound;
        Int vmax = isqrt(four_b / ad);
        for (Int v = -vmax; v <= vmax; ++v)
        {
            Int xmax = isqrt(four_b - ad * v * v);
            // X = 2u - v ranges over [-xmax, xmax] with X = v (mod 2)
            Int lo = -xmax + v;
            Int hi = xmax + v;
            if (mpz_odd_p(lo.get_mpz_t()))
                ++lo;
            if (mpz_odd_p(hi.get_mpz_t()))
                --hi;
            if (lo > hi)
                continue;
            Int ulo = lo / 2;
            Int uhi = hi / 2;
            visit(v, ulo, uhi);
        }
        return;
    }
    Int vmax = isqrt(bound / ad);
    for (Int v = -vmax; v <= vmax; ++v)
    {
        Int umax = isqrt(bound - ad * v * v);
        visit(v, Int(-umax), umax);
    }
}

} // namespace

std::vector<RingElem> elements_with_abs_sq(const RingSpec &spec, const Int &n)
{
    std::vector<RingElem> out;
    if (sgn(n) < 0)
        return out;
    const Int ad(-spec.d());
    if (spec.half_basis())
    {
        Int four_n = 4 * n;
        Int vmax = isqrt(four_n / ad);
        for (Int v = -vmax; v <= vmax; ++v)
        {
            Int rest = four_n - ad * v * v;
            Int x;
            if (!detail::IntOps<Int>::exact_sqrt(rest, x))
                continue;
            for (int s : {-1, 1})
            {
                Int xx = s * x;
                if (s == 1 && x == 0)
                    break;
                Int twice_u = xx + v;
                if (mpz_odd_p(twice_u.get_mpz_t()))
                    continue;
                out.emplace_back(spec, twice_u / 2, v);
            }
        }
    }
    else
    {
        Int vmax = isqrt(n / ad);
        for (Int v = -vmax; v <= vmax; ++v)
        {
            Int x;
            if (!detail::IntOps<Int>::exact_sqrt(Int(n - ad * v * v), x))
                continue;
            out.emplace_back(spec, -x, v);
            if (x != 0)
                out.emplace_back(spec, x, v);
        }
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

void for_each_up_to(const RingSpec &spec, const Int &bound_sq, const std::function<void(const RingElem &)> &visit)
{
    for_each_row(spec, bound_sq, [&](const Int &v, const Int &ulo, const Int &uhi) {
        for (Int u = ulo; u <= uhi; ++u)
        {
            if (sgn(u) == 0 && sgn(v) == 0)
                continue;
            visit(RingElem(spec, u, v));
        }
    });
}

std::vector<RingElem> enumerate_up_to(const RingSpec &spec, const Int &bound_sq)
{
    std::vector<RingElem> out;
    for_each_up_to(spec, bound_sq, [&](const RingElem &z) { out.push_back(z); });
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::string to_string(const RingElem &z)
{
    return z.u().get_str() + "," + z.v().get_str();
}

std::string to_pretty(const RingElem &z)
{
    if (sgn(z.v()) == 0)
        return z.u().get_str();
    std::ostringstream os;
    if (sgn(z.u()) != 0)
        os << z.u().get_str() << (sgn(z.v()) > 0 ? "+" : "-");
    else if (sgn(z.v()) < 0)
        os << "-";
    Int av = abs(z.v());
    if (av != 1)
        os << av.get_str();
    os << "w";
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const RingElem &z)
{
    return os << "(" << to_string(z) << ")";
}

} // namespace dioph
