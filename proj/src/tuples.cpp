#include "dioph/tuples.hpp"

#include <algorithm>

#include "dioph/error.hpp"

namespace dioph
{

const RingElem &DiophTuple::witness(std::size_t i, std::size_t j) const
{
    if (i > j)
        std::swap(i, j);
    for (const auto &w : witnesses_)
    {
        if (w.i == i && w.j == j)
            return w.root;
    }
    throw Error(Errc::InvalidArgument, "no witness for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

bool tuple_less(const DiophTuple &a, const DiophTuple &b)
{
    return std::lexicographical_compare(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(),
                                        CanonicalLess{});
}

std::optional<RingElem> canonical_root(const RingElem &w)
{
    auto roots = sqrt_in_ring(w);
    if (roots.empty())
        return std::nullopt;
    return roots.back();
}

namespace
{

RingElem plus_one(const RingElem &x)
{
    return RingElem(x.spec(), x.u() + 1, x.v());
}

void check_pair_args(const RingElem &a, const RingElem &b)
{
    require_same_ring(a, b);
    if (a.is_zero() || b.is_zero())
        throw Error(Errc::ZeroElement, "0 is not an element of a Diophantine tuple");
    if (a == b)
        throw Error(Errc::EqualElements, "pair elements must be distinct: " + to_string(a));
}

RingElem require_pair(const RingElem &a, const RingElem &b, Errc code)
{
    auto r = is_diophantine_pair(a, b);
    if (!r)
        throw Error(code, "{" + to_string(a) + "; " + to_string(b) + "} is not a Diophantine pair");
    return *r;
}

bool in_set(const RingElem &x, std::initializer_list<const RingElem *> set)
{
    return std::any_of(set.begin(), set.end(), [&](const RingElem *y) { return x == *y; });
}

} // namespace

std::optional<RingElem> is_diophantine_pair(const RingElem &a, const RingElem &b)
{
    check_pair_args(a, b);
    return canonical_root(plus_one(a * b));
}

DiophTuple make_tuple(const RingSpec &spec, std::vector<RingElem> elems)
{
    if (elems.empty())
        throw Error(Errc::InvalidArgument, "empty tuple");
    for (const auto &e : elems)
    {
        if (!(e.spec() == spec))
            throw Error(Errc::MixedRings, "element " + to_string(e) + " is not in the requested ring");
        if (e.is_zero())
            throw Error(Errc::ZeroElement, "0 is not an element of a Diophantine tuple");
    }
    std::sort(elems.begin(), elems.end(), CanonicalLess{});
    for (std::size_t k = 1; k < elems.size(); ++k)
    {
        if (elems[k] == elems[k - 1])
            throw Error(Errc::DuplicateElement, "repeated element " + to_string(elems[k]));
    }
    DiophTuple t(spec);
    for (std::size_t i = 0; i < elems.size(); ++i)
    {
        for (std::size_t j = i + 1; j < elems.size(); ++j)
        {
            auto r = canonical_root(plus_one(elems[i] * elems[j]));
            if (!r)
            {
                throw NotDiophantineError(i, j, to_string(elems[i]) + " * " + to_string(elems[j]) +
                                                    " + 1 is not a square");
            }
            t.witnesses_.push_back(Witness{i, j, std::move(*r)});
        }
    }
    t.elems_ = std::move(elems);
    return t;
}

std::vector<RingElem> regular_extensions(const RingElem &a, const RingElem &b)
{
    RingElem r = require_pair(a, b, Errc::NotAPair);
    RingElem sum = a + b;
    RingElem two_r = Int(2) * r;
    std::vector<RingElem> out;
    for (RingElem c : {sum + two_r, sum - two_r})
    {
        if (c.is_zero() || c == a || c == b)
            continue;
        if (std::find(out.begin(), out.end(), c) != out.end())
            continue;
        // Regular extensions always give triples; a failure here is a bug.
        if (!is_diophantine_pair(a, c) || !is_diophantine_pair(b, c))
            throw Error(Errc::NotATriple, "regular extension " + to_string(c) + " failed verification");
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

bool is_regular_triple(const RingElem &a, const RingElem &b, const RingElem &c)
{
    try
    {
        make_tuple(a.spec(), {a, b, c});
    }
    catch (const Error &e)
    {
        throw Error(Errc::NotATriple, e.what());
    }
    auto contains = [](const std::vector<RingElem> &v, const RingElem &x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    return contains(regular_extensions(a, b), c) || contains(regular_extensions(b, c), a) ||
           contains(regular_extensions(a, c), b);
}

ExtensionCandidates quadruple_extension_candidates(const RingElem &a, const RingElem &b, const RingElem &c)
{
    try
    {
        make_tuple(a.spec(), {a, b, c});
    }
    catch (const Error &e)
    {
        throw Error(Errc::NotATriple, e.what());
    }
    RingElem r = *is_diophantine_pair(a, b);
    RingElem s = *is_diophantine_pair(a, c);
    RingElem tt = *is_diophantine_pair(b, c);
    RingElem base = a + b + c + Int(2) * (a * b * c);
    RingElem twice_rst = Int(2) * (r * s * tt);

    ExtensionCandidates out;
    for (RingElem d : {base + twice_rst, base - twice_rst})
    {
        if (d.is_zero() || in_set(d, {&a, &b, &c}))
            continue;
        if (std::find(out.verified.begin(), out.verified.end(), d) != out.verified.end())
            continue;
        bool ok = is_diophantine_pair(a, d) && is_diophantine_pair(b, d) && is_diophantine_pair(c, d);
        (ok ? out.verified : out.rejected).push_back(std::move(d));
    }
    std::sort(out.verified.begin(), out.verified.end(), CanonicalLess{});
    std::sort(out.rejected.begin(), out.rejected.end(), CanonicalLess{});
    return out;
}

std::pair<RingElem, RingElem> c_plus_minus(const RingElem &a, const RingElem &b, const RingElem &d)
{
    try
    {
        make_tuple(a.spec(), {a, b, d});
    }
    catch (const Error &e)
    {
        throw Error(Errc::NotATriple, e.what());
    }
    RingElem r = *is_diophantine_pair(a, b);
    RingElem x = *is_diophantine_pair(a, d);
    RingElem y = *is_diophantine_pair(b, d);
    RingElem base = a + b + d + Int(2) * (a * b * d);
    RingElem twice_rxy = Int(2) * (r * x * y);
    RingElem cp = base + twice_rxy;
    RingElem cm = base - twice_rxy;

    RingElem rhs = a * a + b * b + d * d - Int(2) * (a * b + a * d + b * d);
    rhs = RingElem(rhs.spec(), rhs.u() - 4, rhs.v());
    if (!(cp * cm == rhs))
        throw Error(Errc::NotATriple, "c+ c- identity failed");
    return {std::move(cp), std::move(cm)};
}

bool forbidden_double_regular(const RingElem &a, const RingElem &b, const RingElem &c, const RingElem &d)
{
    for (const RingElem *x : {&b, &c, &d})
        require_same_ring(a, *x);
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
        throw Error(Errc::ZeroElement, "0 is not an element of a Diophantine tuple");
    if (cmp_abs(a, b) > 0 || cmp_abs(b, c) > 0 || cmp_abs(c, d) > 0)
        throw PreconditionError({"|a| <= |b| <= |c| <= |d|"});
    auto r = canonical_root(plus_one(a * b));
    if (!r)
        return false;
    RingElem sum = a + b;
    RingElem two_r = Int(2) * *r;
    RingElem hi = sum + two_r;
    RingElem lo = sum - two_r;
    return (c == lo && d == hi) || (c == hi && d == lo);
}

bool products_are_nonsquares(const DiophTuple &t)
{
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        for (std::size_t j = i + 1; j < t.size(); ++j)
        {
            if (!sqrt_in_ring(t[i] * t[j]).empty())
                return false;
        }
    }
    return true;
}

} // namespace dioph
