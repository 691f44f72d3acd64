#include <doctest.h>

#include <random>

#include "dioph/error.hpp"
#include "dioph/pell.hpp"
#include "dioph/search.hpp"
#include "dioph/tuples.hpp"
#include "oracles.hpp"

using namespace dioph;

namespace
{

RingElem E(const RingSpec &s, long u, long v = 0)
{
    return RingElem(s, u, v);
}

Errc code_of(const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::InvalidArgument;
}

} // namespace

TEST_CASE("building the system")
{
    RingSpec g(-1), e(-3);
    PellSystem sys = build_system(E(g, 8), E(g, 1), E(g, 3));
    CHECK(sys.a == E(g, 1));
    CHECK(sys.b == E(g, 3));
    CHECK(sys.c == E(g, 8));
    CHECK(sys.s == E(g, 3));
    CHECK(sys.t == E(g, 5));

    PellSystem se = build_system(E(e, -2), E(e, 2), E(e, 2, 4));
    CHECK(se.s * se.s == se.a * se.c + RingElem::one(e));
    CHECK(se.t * se.t == se.b * se.c + RingElem::one(e));
    auto roots = sqrt_in_ring(se.a * se.c + RingElem::one(e));
    CHECK(se.s == roots.back());

    CHECK(code_of([&] { build_system(E(g, 1), E(g, 2), E(g, 3)); }) == Errc::NotATriple);
    CHECK(code_of([&] { build_system(E(g, -1), E(g, 1), E(g, 0)); }) == Errc::NotATriple);
}

TEST_CASE("solution from an extension")
{
    RingSpec g(-1);
    PellSystem sys = build_system(E(g, 1), E(g, 3), E(g, 8));
    PellSolution sol = solution_from_extension(sys, E(g, 120));
    CHECK(sol.x == E(g, 11));
    CHECK(sol.y == E(g, 19));
    CHECK(sol.z == E(g, 31));
    CHECK(first_form(sys, PellPoint{sol.z, sol.x}) == E(g, -7));
    CHECK(solves_system(sys, sol));
    CHECK(code_of([&] { solution_from_extension(sys, E(g, 0)); }) == Errc::NotAQuadruple);
    CHECK(code_of([&] { solution_from_extension(sys, E(g, 5)); }) == Errc::NotAQuadruple);
}

TEST_CASE("composition steps")
{
    RingSpec g(-1);
    // {1, 3, 8}: a = 1, c = 8, s = 3
    PellSystem sys = build_system(E(g, 1), E(g, 3), E(g, 8));
    PellPoint p{E(g, 1), E(g, 1)};
    PellPoint f1 = compose_step(sys, p, Direction::forward);
    CHECK(f1 == PellPoint{E(g, 11), E(g, 4)});
    CHECK(first_form(sys, f1) == E(g, -7));
    PellPoint f2 = compose_step(sys, f1, Direction::forward);
    CHECK(f2 == PellPoint{E(g, 65), E(g, 23)});
    CHECK(compose_step(sys, f2, Direction::backward) == f1);
    CHECK(compose_step(sys, compose_step(sys, p, Direction::backward), Direction::forward) == p);
    CHECK(code_of([&] { compose_step(sys, PellPoint{E(g, 3), E(g, 1)}, Direction::forward); }) == Errc::NotASolution);
}

TEST_CASE("orbit extensions")
{
    RingSpec g(-1);
    PellSystem sys = build_system(E(g, 1), E(g, 3), E(g, 8));
    // (z, x) = (1, -1) lies on z^2 - 8x^2 = -7; its backward orbit reaches z = -31.
    auto ext = extensions_from_orbit(sys, PellPoint{E(g, 1), E(g, -1)}, Int(1000000));
    CHECK(std::find(ext.begin(), ext.end(), E(g, 120)) != ext.end());
    for (const auto &d : ext)
        CHECK(dioph::make_tuple(g, {sys.a, sys.b, sys.c, d}).size() == 4);
    CHECK(extensions_from_orbit(sys, PellPoint{E(g, 1), E(g, -1)}, Int(100)).empty());
    CHECK(code_of([&] { extensions_from_orbit(sys, PellPoint{E(g, 3), E(g, 1)}, Int(100)); }) == Errc::NotASolution);
}

TEST_CASE("orbit steps preserve the form")
{
    std::mt19937_64 rng(31);
    for (auto d : oracle::test_rings())
    {
        RingSpec s(d);
        auto triples = find_m_tuples(SearchConfig{s, 64, 1, 3});
        for (std::size_t k = 0; k < triples.tuples.size() && k < 5; ++k)
        {
            const auto &t = triples.tuples[k];
            PellSystem sys = build_system(t[0], t[1], t[2]);
            // z = x = 1 always solves a z^2 - c x^2 = a - c.
            PellPoint p{RingElem::one(s), RingElem::one(s)};
            RingElem value = first_form(sys, p);
            for (int step = 0; step < 6; ++step)
            {
                Direction dir = rng() % 2 ? Direction::forward : Direction::backward;
                p = compose_step(sys, p, dir);
                CHECK(first_form(sys, p) == value);
            }
        }
    }
}

TEST_CASE("found quadruples yield Pell solutions")
{
    for (auto d : {-1L, -2L, -3L, -7L})
    {
        RingSpec s(d);
        for (const auto &q : find_m_tuples(SearchConfig{s, 256, 1, 4}).tuples)
        {
            PellSystem sys = build_system(q[0], q[1], q[2]);
            PellSolution sol = solution_from_extension(sys, q[3]);
            CHECK(solves_system(sys, sol));
            // Walking the orbit from the solution itself re-emits the element.
            auto ext = extensions_from_orbit(sys, PellPoint{sol.z, sol.x}, abs_sq(sol.z));
            CHECK(std::find(ext.begin(), ext.end(), q[3]) != ext.end());
        }
    }
}
