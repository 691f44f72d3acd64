#pragma once

#include <optional>
#include <type_traits>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "dioph/error.hpp"

namespace dioph
{

/*
 * Closed interval [lo, hi] with MPFR endpoints rounded outward.  Every
 * operation returns an enclosure of all values the exact operation can take on
 * the operand intervals.  Functions with restricted domains (sqrt, log, the
 * rational powers) throw InvalidArgument when an operand leaves the domain.
 */
class Interval
{
public:
    explicit Interval(mpfr_prec_t prec);
    Interval(const mpz_class &x, mpfr_prec_t prec);
    Interval(const mpq_class &x, mpfr_prec_t prec);
    Interval(const Interval &o);
    Interval(Interval &&o) noexcept;
    Interval &operator=(Interval o) noexcept;
    ~Interval();

    mpfr_prec_t precision() const noexcept { return prec_; }
    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }

    bool positive() const { return mpfr_sgn(lo_) > 0; }
    bool contains(const mpq_class &x) const;

    // Certified comparisons: true only when every point satisfies the relation.
    bool certainly_less(const Interval &o) const { return mpfr_less_p(hi_, o.lo_) != 0; }
    bool certainly_greater(const Interval &o) const { return o.certainly_less(*this); }
    bool certainly_less(const mpq_class &x) const;
    bool certainly_greater(const mpq_class &x) const;

    // Decimal strings of the endpoints, rounded outward to `digits` significant digits.
    std::string lo_str(int digits = 30) const;
    std::string hi_str(int digits = 30) const;
    double mid_double() const;

    friend Interval operator+(const Interval &a, const Interval &b);
    friend Interval operator-(const Interval &a, const Interval &b);
    friend Interval operator*(const Interval &a, const Interval &b);
    friend Interval operator/(const Interval &a, const Interval &b);

    friend Interval sqrt(const Interval &a);
    friend Interval log(const Interval &a);
    friend Interval exp(const Interval &a);
    // a^(num/den) for a >= 0, num >= 0, den >= 1.
    friend Interval pow_ratio(const Interval &a, unsigned long num, unsigned long den);
    friend Interval max(const Interval &a, const Interval &b);
    friend Interval min(const Interval &a, const Interval &b);
    friend Interval square(const Interval &a);

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

inline constexpr mpfr_prec_t interval_start_bits = 128;
inline constexpr mpfr_prec_t interval_cap_bits = 4096;

/*
 * Runs `decide(prec)` at 128, 256, ... bits until it returns a value, and
 * throws Undecidable past 4096 bits.  `decide` returns std::nullopt when the
 * enclosures at that precision are too wide to settle the question.
 */
template <class F>
auto certify(F &&decide, const std::string &what) -> typename std::invoke_result_t<F, mpfr_prec_t>::value_type
{
    for (mpfr_prec_t prec = interval_start_bits; prec <= interval_cap_bits; prec *= 2)
    {
        if (auto r = decide(prec))
            return std::move(*r);
    }
    throw Error(Errc::Undecidable, what + " not certified at " + std::to_string(interval_cap_bits) + " bits");
}

} // namespace dioph
