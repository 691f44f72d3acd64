#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dioph
{

using Int = mpz_class;

bool is_squarefree(std::int64_t n);

/*
 * Ring of integers of Q(sqrt(d)), d < 0 squarefree.  Elements are written
 * u + v*w over the basis (1, w) with w = sqrt(d), or w = (-1 + sqrt(d))/2
 * when d = 1 (mod 4) ("half basis").
 */
class RingSpec
{
public:
    explicit RingSpec(std::int64_t d);

    std::int64_t d() const noexcept { return d_; }
    bool half_basis() const noexcept { return half_; }

    // (1 - d)/4 for the half basis, |d| otherwise: the coefficient of v^2 in the norm form.
    std::int64_t norm_v2() const noexcept { return half_ ? (1 - d_) / 4 : -d_; }

    friend bool operator==(const RingSpec &, const RingSpec &) = default;

private:
    std::int64_t d_;
    bool half_;
};

class RingElem
{
public:
    RingElem(RingSpec spec, Int u = 0, Int v = 0) : spec_(spec), u_(std::move(u)), v_(std::move(v)) {}

    static RingElem one(RingSpec spec) { return RingElem(spec, 1, 0); }
    static RingElem omega(RingSpec spec) { return RingElem(spec, 0, 1); }

    const RingSpec &spec() const noexcept { return spec_; }
    const Int &u() const noexcept { return u_; }
    const Int &v() const noexcept { return v_; }

    bool is_zero() const noexcept { return sgn(u_) == 0 && sgn(v_) == 0; }
    bool is_rational() const noexcept { return sgn(v_) == 0; }

    // Coordinates only; elements of different rings never compare equal.
    friend bool operator==(const RingElem &a, const RingElem &b)
    {
        return a.spec_ == b.spec_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

    RingElem &operator+=(const RingElem &o);
    RingElem &operator-=(const RingElem &o);
    RingElem &operator*=(const RingElem &o);

private:
    RingSpec spec_;
    Int u_, v_;
};

RingElem operator+(RingElem a, const RingElem &b);
RingElem operator-(RingElem a, const RingElem &b);
RingElem operator-(const RingElem &a);
RingElem operator*(const RingElem &a, const RingElem &b);
RingElem operator*(const Int &k, const RingElem &a);

// |z|^2, which equals the field norm.
Int abs_sq(const RingElem &z);

// Compares |z1| and |z2| exactly.
std::strong_ordering cmp_abs(const RingElem &z1, const RingElem &z2);

RingElem conj(const RingElem &z);

bool is_unit(const RingElem &z);

// All z with z*z == w: empty, {0}, or {z, -z} in canonical order.
std::vector<RingElem> sqrt_in_ring(const RingElem &w);

// num / den if the quotient lies in the ring.
std::optional<RingElem> divide_exact(const RingElem &num, const RingElem &den);

// All z with abs_sq(z) == n, in canonical order.
std::vector<RingElem> elements_with_abs_sq(const RingSpec &spec, const Int &n);

// Every nonzero z with abs_sq(z) <= bound_sq, in canonical order.
std::vector<RingElem> enumerate_up_to(const RingSpec &spec, const Int &bound_sq);

// Visits every nonzero z with abs_sq(z) <= bound_sq in no particular order.
// Does not materialize the set, so it suits bounds far beyond what
// enumerate_up_to should be asked to sort.
void for_each_up_to(const RingSpec &spec, const Int &bound_sq,
                    const std::function<void(const RingElem &)> &visit);

// Canonical element order: (abs_sq, u, v) lexicographic.
std::strong_ordering canonical_cmp(const RingElem &a, const RingElem &b);

struct CanonicalLess
{
    bool operator()(const RingElem &a, const RingElem &b) const { return canonical_cmp(a, b) < 0; }
};

// "u,v" in the (1, w) basis.
std::string to_string(const RingElem &z);
// Human form, e.g. "-2+4w".
std::string to_pretty(const RingElem &z);

std::ostream &operator<<(std::ostream &os, const RingElem &z);

// Throws MixedRings when the specs differ.
void require_same_ring(const RingElem &a, const RingElem &b);

} // namespace dioph
