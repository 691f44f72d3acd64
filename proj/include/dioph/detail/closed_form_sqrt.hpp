#pragma once

#include <cmath>
#include <cstdint>

#include <gmpxx.h>

namespace dioph::detail
{

template <class T>
struct IntOps;

template <>
struct IntOps<mpz_class>
{
    static bool exact_sqrt(const mpz_class &n, mpz_class &root)
    {
        if (sgn(n) < 0 || !mpz_perfect_square_p(n.get_mpz_t()))
            return false;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        return true;
    }
    static bool is_odd(const mpz_class &x) { return mpz_odd_p(x.get_mpz_t()) != 0; }
    static int sign(const mpz_class &x) { return sgn(x); }
};

template <>
struct IntOps<__int128>
{
    static bool exact_sqrt(__int128 n, __int128 &root)
    {
        if (n < 0)
            return false;
        // Quadratic residues mod 64 reject most non-squares cheaply.
        constexpr std::uint64_t residues64 = 0x0202021202030213ULL;
        if (((residues64 >> static_cast<unsigned>(n & 63)) & 1U) == 0)
            return false;
        __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
        while (r > 0 && r * r > n)
            --r;
        while ((r + 1) * (r + 1) <= n)
            ++r;
        if (r * r != n)
            return false;
        root = r;
        return true;
    }
    static bool is_odd(__int128 x) { return (x & 1) != 0; }
    static int sign(__int128 x) { return (x > 0) - (x < 0); }
};

/*
 * Square roots of w = p + q*w0 in the order with parameter d, by solving for the
 * coordinates of the root from the norm and the trace of w.  Returns the number of
 * distinct roots (0, 1 when w = 0, or 2) and writes one root to (u, v); the other
 * is (-u, -v).  Every returned root has been re-squared and compared to w.
 *
 * With the plain basis, z = u + v*sqrt(d) and n = |w|:
 *     u^2 = (n + p)/2,   v^2 = (n - p)/(2|d|),   2uv = q.
 * With the half basis, 2z = X + Y*sqrt(d) where X = 2u - v, Y = v:
 *     X^2 = 2n + 2p - q, Y^2 = (2n - 2p + q)/|d|,  XY = q,  X = Y (mod 2).
 */
template <class T>
int closed_form_sqrt(std::int64_t d, bool half_basis, const T &p, const T &q, T &u, T &v)
{
    using Ops = IntOps<T>;
    const T ad = T(-d);
    if (Ops::sign(p) == 0 && Ops::sign(q) == 0)
    {
        u = 0;
        v = 0;
        return 1;
    }
    if (!half_basis)
    {
        T n;
        if (!Ops::exact_sqrt(T(p * p + ad * q * q), n))
            return 0;
        T twice_u2 = n + p;
        T twice_v2 = n - p;
        if (Ops::is_odd(twice_u2) || T(twice_v2 % (2 * ad)) != 0)
            return 0;
        T uu, vv;
        if (!Ops::exact_sqrt(T(twice_u2 / 2), uu) || !Ops::exact_sqrt(T(twice_v2 / (2 * ad)), vv))
            return 0;
        if (Ops::sign(q) < 0)
            vv = -vv;
        if (T(uu * uu - ad * vv * vv) != p || T(2 * uu * vv) != q)
            return 0;
        u = uu;
        v = vv;
        return 2;
    }
    const T k = T((1 - d) / 4);
    T n;
    if (!Ops::exact_sqrt(T(p * p - p * q + k * q * q), n))
        return 0;
    T x2 = 2 * n + 2 * p - q;
    T y2_num = 2 * n - 2 * p + q;
    if (T(y2_num % ad) != 0)
        return 0;
    T xx, yy;
    if (!Ops::exact_sqrt(x2, xx) || !Ops::exact_sqrt(T(y2_num / ad), yy))
        return 0;
    if (Ops::sign(q) < 0)
        yy = -yy;
    if (Ops::is_odd(T(xx + yy)))
        return 0;
    T uu = (xx + yy) / 2;
    T vv = yy;
    // (u + v*w)^2 = (u^2 + v^2 (d-1)/4) + (2uv - v^2) w
    if (T(uu * uu - k * vv * vv) != p || T(2 * uu * vv - vv * vv) != q)
        return 0;
    u = uu;
    v = vv;
    return 2;
}

} // namespace dioph::detail
