#pragma once

#include <vector>

#include "dioph/ring.hpp"

namespace dioph
{

/*
 * The system obtained by eliminating d from ad+1 = x^2, bd+1 = y^2, cd+1 = z^2:
 *
 *     a z^2 - c x^2 = a - c
 *     b z^2 - c y^2 = b - c
 *
 * s and t are the canonical roots of ac + 1 and bc + 1.
 */
struct PellSystem
{
    RingElem a, b, c;
    RingElem s, t;
};

struct PellSolution
{
    RingElem x, y, z;
};

// A point (z, x) on the first equation a z^2 - c x^2 = a - c.
struct PellPoint
{
    RingElem z, x;

    friend bool operator==(const PellPoint &, const PellPoint &) = default;
};

enum class Direction
{
    forward,
    backward,
};

PellSystem build_system(const RingElem &a, const RingElem &b, const RingElem &c);

// a z^2 - c x^2
RingElem first_form(const PellSystem &sys, const PellPoint &pt);

bool solves_first(const PellSystem &sys, const PellPoint &pt);
bool solves_system(const PellSystem &sys, const PellSolution &sol);

PellSolution solution_from_extension(const PellSystem &sys, const RingElem &d);

// Multiplication by the automorph s + sqrt(ac) (forward) or its inverse s - sqrt(ac).
PellPoint compose_step(const PellSystem &sys, const PellPoint &pt, Direction dir);

/*
 * Walks the orbit of `seed` in both directions while abs_sq(z) stays within
 * max_abs_sq, and emits every d = (z^2 - 1)/c in the ring that also makes
 * bd + 1 a square and is not already in the triple.  Output is deduplicated,
 * in canonical order, and re-verified.  Throws OrbitNotDiverging if 20
 * consecutive steps fail to set a new maximum of abs_sq(z).
 */
std::vector<RingElem> extensions_from_orbit(const PellSystem &sys, const PellPoint &seed, const Int &max_abs_sq);

} // namespace dioph
