#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dioph/ring.hpp"

namespace dioph
{

// root * root == elems[i] * elems[j] + 1, with i < j.
struct Witness
{
    std::size_t i;
    std::size_t j;
    RingElem root;
};

/*
 * A verified Diophantine m-tuple: distinct nonzero elements in canonical order
 * (so abs_sq is nondecreasing) together with a canonical witness for every pair.
 * Only make_tuple builds these.
 */
class DiophTuple
{
public:
    const RingSpec &spec() const noexcept { return spec_; }
    const std::vector<RingElem> &elems() const noexcept { return elems_; }
    const std::vector<Witness> &witnesses() const noexcept { return witnesses_; }
    std::size_t size() const noexcept { return elems_.size(); }
    const RingElem &operator[](std::size_t k) const { return elems_[k]; }

    const RingElem &witness(std::size_t i, std::size_t j) const;

    friend bool operator==(const DiophTuple &a, const DiophTuple &b) { return a.elems_ == b.elems_; }

private:
    friend DiophTuple make_tuple(const RingSpec &, std::vector<RingElem>);

    DiophTuple(RingSpec spec) : spec_(spec) {}

    RingSpec spec_;
    std::vector<RingElem> elems_;
    std::vector<Witness> witnesses_;
};

// Lexicographic over the canonical element order.
bool tuple_less(const DiophTuple &a, const DiophTuple &b);

// The larger (canonical order) square root of w, if w is a square.
std::optional<RingElem> canonical_root(const RingElem &w);

// Canonical square root of ab + 1 when {a, b} is a Diophantine pair.
std::optional<RingElem> is_diophantine_pair(const RingElem &a, const RingElem &b);

// Throws NotDiophantineError with the first failing (i, j) in sorted order.
DiophTuple make_tuple(const RingSpec &spec, std::vector<RingElem> elems);

// {a + b + 2r, a + b - 2r} \ {0, a, b} where r^2 = ab + 1.
std::vector<RingElem> regular_extensions(const RingElem &a, const RingElem &b);

bool is_regular_triple(const RingElem &a, const RingElem &b, const RingElem &c);

struct ExtensionCandidates
{
    std::vector<RingElem> verified;
    std::vector<RingElem> rejected;
};

// a + b + c + 2abc +- 2rst, minus {0, a, b, c}; each candidate re-verified.
ExtensionCandidates quadruple_extension_candidates(const RingElem &a, const RingElem &b, const RingElem &c);

// c+- = a + b + d + 2abd +- 2rxy.  Checks c+ * c- = a^2+b^2+d^2-2ab-2ad-2bd-4
// before returning.
std::pair<RingElem, RingElem> c_plus_minus(const RingElem &a, const RingElem &b, const RingElem &d);

// True iff {c, d} = {a + b - 2r, a + b + 2r} with r^2 = ab + 1.
bool forbidden_double_regular(const RingElem &a, const RingElem &b, const RingElem &c, const RingElem &d);

// No product of two distinct elements of the tuple is a square in the ring.
// Holds for every Diophantine triple with nonzero elements.
bool products_are_nonsquares(const DiophTuple &t);

} // namespace dioph
