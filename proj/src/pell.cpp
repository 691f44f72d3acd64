#include "dioph/pell.hpp"

#include <algorithm>

#include "dioph/error.hpp"
#include "dioph/tuples.hpp"

namespace dioph
{

namespace
{

RingElem plus_one(const RingElem &x)
{
    return RingElem(x.spec(), x.u() + 1, x.v());
}

RingElem minus_one(const RingElem &x)
{
    return RingElem(x.spec(), x.u() - 1, x.v());
}

constexpr int divergence_patience = 20;

} // namespace

PellSystem build_system(const RingElem &a, const RingElem &b, const RingElem &c)
{
    DiophTuple t = [&] {
        try
        {
            return make_tuple(a.spec(), {a, b, c});
        }
        catch (const Error &e)
        {
            throw Error(Errc::NotATriple, e.what());
        }
    }();
    if (t.size() != 3)
        throw Error(Errc::NotATriple, "expected three distinct elements");
    return PellSystem{t[0], t[1], t[2], t.witness(0, 2), t.witness(1, 2)};
}

RingElem first_form(const PellSystem &sys, const PellPoint &pt)
{
    return sys.a * pt.z * pt.z - sys.c * pt.x * pt.x;
}

bool solves_first(const PellSystem &sys, const PellPoint &pt)
{
    return first_form(sys, pt) == sys.a - sys.c;
}

bool solves_system(const PellSystem &sys, const PellSolution &sol)
{
    return solves_first(sys, PellPoint{sol.z, sol.x}) && sys.b * sol.z * sol.z - sys.c * sol.y * sol.y == sys.b - sys.c;
}

PellSolution solution_from_extension(const PellSystem &sys, const RingElem &d)
{
    try
    {
        make_tuple(sys.a.spec(), {sys.a, sys.b, sys.c, d});
    }
    catch (const Error &e)
    {
        throw Error(Errc::NotAQuadruple, e.what());
    }
    PellSolution sol{*canonical_root(plus_one(sys.a * d)), *canonical_root(plus_one(sys.b * d)),
                     *canonical_root(plus_one(sys.c * d))};
    if (!solves_system(sys, sol))
        throw Error(Errc::NotAQuadruple, "Pell identities failed for d = " + to_string(d));
    return sol;
}

PellPoint compose_step(const PellSystem &sys, const PellPoint &pt, Direction dir)
{
    if (!solves_first(sys, pt))
        throw Error(Errc::NotASolution, "(" + to_string(pt.z) + "; " + to_string(pt.x) + ") does not solve a z^2 - c x^2 = a - c");
    if (dir == Direction::forward)
        return PellPoint{sys.s * pt.z + sys.c * pt.x, sys.s * pt.x + sys.a * pt.z};
    return PellPoint{sys.s * pt.z - sys.c * pt.x, sys.s * pt.x - sys.a * pt.z};
}

std::vector<RingElem> extensions_from_orbit(const PellSystem &sys, const PellPoint &seed, const Int &max_abs_sq)
{
    if (!solves_first(sys, seed))
        throw Error(Errc::NotASolution, "seed does not solve a z^2 - c x^2 = a - c");

    std::vector<RingElem> found;
    auto consider = [&](const PellPoint &pt) {
        if (abs_sq(pt.z) > max_abs_sq)
            return;
        auto d = divide_exact(minus_one(pt.z * pt.z), sys.c);
        if (!d || d->is_zero() || *d == sys.a || *d == sys.b || *d == sys.c)
            return;
        if (sqrt_in_ring(plus_one(sys.b * *d)).empty())
            return;
        found.push_back(std::move(*d));
    };

    consider(seed);
    for (Direction dir : {Direction::forward, Direction::backward})
    {
        PellPoint pt = seed;
        Int prev = abs_sq(pt.z);
        Int best = prev;
        int stale = 0;
        while (true)
        {
            pt = compose_step(sys, pt, dir);
            Int cur = abs_sq(pt.z);
            consider(pt);
            if (cur > max_abs_sq && cur > prev)
                break;
            if (cur > best)
            {
                best = cur;
                stale = 0;
            }
            else if (++stale >= divergence_patience)
            {
                throw Error(Errc::OrbitNotDiverging, "orbit of (" + to_string(seed.z) + "; " + to_string(seed.x) +
                                                         ") did not grow in " + std::to_string(divergence_patience) +
                                                         " steps");
            }
            prev = std::move(cur);
        }
    }

    std::sort(found.begin(), found.end(), CanonicalLess{});
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const auto &d : found)
        make_tuple(sys.a.spec(), {sys.a, sys.b, sys.c, d});
    return found;
}

} // namespace dioph
