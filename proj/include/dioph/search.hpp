#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/ring.hpp"
#include "dioph/tuples.hpp"

namespace dioph
{

enum class SearchMode
{
    find_all,
    find_first,
    count,
};

struct SearchConfig
{
    RingSpec spec;
    Int max_abs_sq;
    Int min_abs_sq = 1;
    std::size_t target_size = 2;
    SearchMode mode = SearchMode::find_all;
    unsigned threads = 1; // 0 = hardware concurrency
};

struct SearchStats
{
    std::uint64_t elements = 0;
    std::uint64_t pairs_tested = 0;
    std::uint64_t edges = 0;
    std::uint64_t cliques_explored = 0; // partial cliques visited by the enumeration
    double wall_seconds = 0;
};

struct SearchResult
{
    std::vector<DiophTuple> tuples; // sorted by tuple_less; empty in count mode
    std::uint64_t count = 0;        // tuples found (at most 1 in find_first mode)
    SearchStats stats;
};

/*
 * Every Diophantine target_size-tuple of nonzero elements z with
 * min_abs_sq <= abs_sq(z) <= max_abs_sq.  Builds the pair graph over the
 * enumerated elements and lists its cliques of the target size along a
 * degeneracy order.  find_first returns the tuple reached first from the
 * earliest root of that order, so the answer does not depend on the thread
 * count.  Throws InvalidArgument for max_abs_sq < 1 or target_size < 2.
 */
SearchResult find_m_tuples(const SearchConfig &cfg);

// Diophantine m-tuples of rational integers 1 <= |n| <= bound whose pairwise
// products plus one are squares of rational integers.  Sorted, each ascending.
std::vector<std::vector<Int>> find_rational_m_tuples(const Int &bound, std::size_t target_size);

// Largest |d| for which the ring of Q(sqrt(d)) has a non-real element with
// abs_sq <= bound_sq: 4 bound_sq - 1 through the half basis.
std::int64_t complex_element_cutoff(const Int &bound_sq);

// Squarefree d < 0 with |d| <= 4 bound_sq, from -1 downwards.
std::vector<std::int64_t> sweep_discriminants(const Int &bound_sq);

struct SweepConfig
{
    Int max_abs_sq = 256;
    std::size_t target_size = 5;
    unsigned threads = 0;
    std::optional<std::string> cache_dir;
};

struct RingSweep
{
    std::int64_t d;
    std::uint64_t elements;
    std::uint64_t tuples;
    bool cached; // served from the result cache
};

/*
 * Why the sweep is complete.  Past complex_cutoff every candidate element is a
 * rational integer.  A witness for n = a_i a_j + 1 (|n| <= witness_bound) that
 * is not itself rational has the form y sqrt(d), forcing |d| <= witness_bound,
 * which is inside the per-ring range.  So the rings up to ring_cutoff plus one
 * pass over rational integers with rational witnesses cover every d.
 */
struct Completeness
{
    std::int64_t ring_cutoff;
    std::int64_t complex_cutoff;
    Int witness_bound;
    std::int64_t quoted_cutoff; // 32, as usually stated; too small for the half basis
    std::size_t rings_searched;
};

struct SweepReport
{
    Int max_abs_sq;
    std::size_t target_size;
    std::vector<RingSweep> rings;
    std::vector<DiophTuple> tuples; // ordered by d, then tuple_less
    std::vector<std::vector<Int>> rational_tuples;
    Completeness completeness;
};

SweepReport quintuple_sweep(const SweepConfig &cfg);

/*
 * Every d outside t with 1 <= abs_sq(d) <= max_abs_sq such that t with d is
 * again a Diophantine tuple, in canonical order.  Runs over the square roots x
 * of a d + 1 for the smallest element a, which need abs_sq(x) <= |a||d| + 1.
 */
std::vector<RingElem> extend_tuple(const DiophTuple &t, const Int &max_abs_sq);

/*
 * Search results on disk: one JSON-lines file per (d, max_abs_sq, m) holding
 * one tuple per line.  Loaded tuples are re-verified; a file that fails to
 * parse or verify is ignored.
 */
class ResultCache
{
public:
    explicit ResultCache(std::string dir);

    // Directory from DIOPH_CACHE_DIR, if set and nonempty.
    static std::optional<ResultCache> from_env();

    std::optional<std::vector<DiophTuple>> load(const RingSpec &spec, const Int &max_abs_sq, std::size_t m) const;
    void store(const RingSpec &spec, const Int &max_abs_sq, std::size_t m, const std::vector<DiophTuple> &tuples) const;

    std::string path_for(const RingSpec &spec, const Int &max_abs_sq, std::size_t m) const;

private:
    std::string dir_;
};

// Runs find_all through the cache when one is given.
SearchResult find_m_tuples_cached(const SearchConfig &cfg, const ResultCache *cache, bool *hit = nullptr);

} // namespace dioph
