#include "dioph/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>

#include "dioph/detail/closed_form_sqrt.hpp"
#include "dioph/error.hpp"

namespace dioph
{

namespace
{

using Row = std::vector<std::uint64_t>;

unsigned worker_count(unsigned requested, std::size_t jobs)
{
    unsigned n = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Calls body(job, worker) for job in [0, jobs) on `workers` threads.
template <class F>
void parallel_for(std::size_t jobs, unsigned workers, F body)
{
    if (workers <= 1)
    {
        for (std::size_t j = 0; j < jobs; ++j)
            body(j, 0U);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr err;
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            try
            {
                for (std::size_t j = next++; j < jobs; j = next++)
                    body(j, w);
            }
            catch (...)
            {
                std::lock_guard lock(err_mu);
                if (!err)
                    err = std::current_exception();
                next = jobs;
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

struct Graph
{
    std::size_t n = 0;
    std::size_t words = 0;
    std::vector<Row> adj;

    explicit Graph(std::size_t n_) : n(n_), words((n_ + 63) / 64), adj(n_, Row((n_ + 63) / 64, 0)) {}

    bool has(std::size_t i, std::size_t j) const { return (adj[i][j / 64] >> (j % 64)) & 1U; }
    void set(std::size_t i, std::size_t j) { adj[i][j / 64] |= std::uint64_t{1} << (j % 64); }
};

std::size_t popcount(const Row &r)
{
    std::size_t c = 0;
    for (auto w : r)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

// Builds the graph from an upper-triangle predicate, one row per job.
template <class Edge>
Graph build_graph(std::size_t n, unsigned threads, Edge edge)
{
    Graph g(n);
    parallel_for(n, worker_count(threads, n), [&](std::size_t i, unsigned) {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (edge(i, j))
                g.set(i, j);
        }
    });
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (g.has(i, j))
                g.set(j, i);
        }
    }
    return g;
}

// Repeatedly removes a vertex of minimum remaining degree (lowest index on ties).
std::vector<std::size_t> degeneracy_order(const Graph &g)
{
    std::vector<std::size_t> deg(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        deg[i] = popcount(g.adj[i]);
    std::vector<char> removed(g.n, 0);
    std::vector<std::size_t> order;
    order.reserve(g.n);
    for (std::size_t step = 0; step < g.n; ++step)
    {
        std::size_t best = g.n;
        for (std::size_t i = 0; i < g.n; ++i)
        {
            if (!removed[i] && (best == g.n || deg[i] < deg[best]))
                best = i;
        }
        removed[best] = 1;
        order.push_back(best);
        for (std::size_t j = 0; j < g.n; ++j)
        {
            if (!removed[j] && g.has(best, j))
                --deg[j];
        }
    }
    return order;
}

struct CliqueListing
{
    std::vector<std::vector<std::size_t>> cliques; // original vertex indices
    std::uint64_t count = 0;
    std::uint64_t explored = 0;
};

/*
 * Lists k-cliques by orienting every edge towards the later vertex of a
 * degeneracy order; each clique is then reached exactly once, from its earliest
 * vertex, by intersecting out-neighbourhoods.  Branches whose candidate set is
 * smaller than the number of vertices still needed are cut.
 */
CliqueListing list_cliques(const Graph &g, std::size_t k, SearchMode mode, unsigned threads)
{
    CliqueListing out;
    if (k == 0 || g.n < k)
        return out;
    auto order = degeneracy_order(g);

    // Out-neighbourhoods in position space.
    std::vector<Row> fwd(g.n, Row(g.words, 0));
    for (std::size_t p = 0; p < g.n; ++p)
    {
        for (std::size_t q = p + 1; q < g.n; ++q)
        {
            if (g.has(order[p], order[q]))
                fwd[p][q / 64] |= std::uint64_t{1} << (q % 64);
        }
    }

    struct Local
    {
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> found; // (root, clique)
        std::uint64_t count = 0;
        std::uint64_t explored = 0;
    };
    unsigned workers = worker_count(threads, g.n);
    std::vector<Local> locals(workers);
    std::atomic<std::size_t> first_root{g.n};

    parallel_for(g.n, workers, [&](std::size_t root, unsigned w) {
        Local &loc = locals[w];
        if (mode == SearchMode::find_first && root >= first_root.load())
            return;
        std::vector<std::size_t> stack{root};
        bool stop = false;

        auto emit = [&] {
            ++loc.count;
            if (mode == SearchMode::count)
                return;
            std::vector<std::size_t> c;
            c.reserve(stack.size());
            for (auto p : stack)
                c.push_back(order[p]);
            loc.found.emplace_back(root, std::move(c));
            if (mode == SearchMode::find_first)
            {
                stop = true;
                std::size_t cur = first_root.load();
                while (root < cur && !first_root.compare_exchange_weak(cur, root))
                {
                }
            }
        };

        auto rec = [&](auto &&self, const Row &cand, std::size_t need) -> void {
            ++loc.explored;
            if (need == 0)
            {
                emit();
                return;
            }
            if (popcount(cand) < need)
                return;
            Row next(g.words);
            for (std::size_t wi = 0; wi < g.words && !stop; ++wi)
            {
                std::uint64_t bits = cand[wi];
                while (bits != 0 && !stop)
                {
                    std::size_t q = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    for (std::size_t x = 0; x < g.words; ++x)
                        next[x] = cand[x] & fwd[q][x];
                    stack.push_back(q);
                    self(self, next, need - 1);
                    stack.pop_back();
                }
            }
        };
        rec(rec, fwd[root], k - 1);
    });

    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> all;
    for (auto &loc : locals)
    {
        out.count += loc.count;
        out.explored += loc.explored;
        for (auto &f : loc.found)
            all.push_back(std::move(f));
    }
    if (mode == SearchMode::find_first)
    {
        auto best = std::min_element(all.begin(), all.end(),
                                     [](const auto &a, const auto &b) { return a.first < b.first; });
        out.count = best == all.end() ? 0 : 1;
        // explored depends on how far the other workers got; keep it schedule-independent.
        out.explored = 0;
        if (best != all.end())
            out.cliques.push_back(std::move(best->second));
        return out;
    }
    for (auto &f : all)
        out.cliques.push_back(std::move(f.second));
    return out;
}

// Coordinates small enough for the __int128 pair test.
bool fits_fast_path(const RingSpec &spec, const Int &max_abs_sq)
{
    return spec.d() > -(std::int64_t{1} << 20) && max_abs_sq < (Int(1) << 30);
}

bool fast_is_pair(const RingSpec &spec, std::int64_t u1, std::int64_t v1, std::int64_t u2, std::int64_t v2)
{
    using I = __int128;
    const std::int64_t d = spec.d();
    I p, q;
    if (spec.half_basis())
    {
        const I k = (d - 1) / 4; // w^2 = -w + (d - 1)/4
        p = I(u1) * u2 + k * v1 * v2;
        q = I(u1) * v2 + I(u2) * v1 - I(v1) * v2;
    }
    else
    {
        p = I(u1) * u2 + I(d) * v1 * v2;
        q = I(u1) * v2 + I(u2) * v1;
    }
    p += 1;
    I ru, rv;
    return detail::closed_form_sqrt<I>(d, spec.half_basis(), p, q, ru, rv) > 0;
}

DiophTuple verified_tuple(const RingSpec &spec, const std::vector<RingElem> &elems,
                          const std::vector<std::size_t> &idx)
{
    std::vector<RingElem> t;
    t.reserve(idx.size());
    for (auto i : idx)
        t.push_back(elems[i]);
    return make_tuple(spec, std::move(t));
}

Int isqrt(const Int &n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

} // namespace

SearchResult find_m_tuples(const SearchConfig &cfg)
{
    if (cfg.max_abs_sq < 1)
        throw Error(Errc::InvalidArgument, "max_abs_sq must be at least 1");
    if (cfg.target_size < 2)
        throw Error(Errc::InvalidArgument, "target_size must be at least 2");
    auto start = std::chrono::steady_clock::now();
    const RingSpec &spec = cfg.spec;

    std::vector<RingElem> elems;
    for (auto &z : enumerate_up_to(spec, cfg.max_abs_sq))
    {
        if (abs_sq(z) >= cfg.min_abs_sq)
            elems.push_back(std::move(z));
    }
    const std::size_t n = elems.size();

    SearchResult res;
    res.stats.elements = n;
    res.stats.pairs_tested = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;

    Graph g = [&] {
        if (fits_fast_path(spec, cfg.max_abs_sq))
        {
            std::vector<std::int64_t> us(n), vs(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                us[i] = elems[i].u().get_si();
                vs[i] = elems[i].v().get_si();
            }
            return build_graph(n, cfg.threads,
                               [&](std::size_t i, std::size_t j) { return fast_is_pair(spec, us[i], vs[i], us[j], vs[j]); });
        }
        return build_graph(n, cfg.threads, [&](std::size_t i, std::size_t j) {
            return !sqrt_in_ring(elems[i] * elems[j] + RingElem::one(spec)).empty();
        });
    }();
    for (std::size_t i = 0; i < n; ++i)
        res.stats.edges += popcount(g.adj[i]);
    res.stats.edges /= 2;

    CliqueListing cl = list_cliques(g, cfg.target_size, cfg.mode, cfg.threads);
    res.count = cl.count;
    res.stats.cliques_explored = cl.explored;
    for (const auto &c : cl.cliques)
        res.tuples.push_back(verified_tuple(spec, elems, c));
    std::sort(res.tuples.begin(), res.tuples.end(), tuple_less);

    res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<std::vector<Int>> find_rational_m_tuples(const Int &bound, std::size_t target_size)
{
    if (target_size < 2)
        throw Error(Errc::InvalidArgument, "target_size must be at least 2");
    std::vector<Int> vals;
    for (Int k = 1; k <= bound; ++k)
    {
        vals.push_back(-k);
        vals.push_back(k);
    }
    std::sort(vals.begin(), vals.end());
    Graph g = build_graph(vals.size(), 1, [&](std::size_t i, std::size_t j) {
        Int w = vals[i] * vals[j] + 1;
        return sgn(w) >= 0 && mpz_perfect_square_p(w.get_mpz_t()) != 0;
    });
    CliqueListing cl = list_cliques(g, target_size, SearchMode::find_all, 1);
    std::vector<std::vector<Int>> out;
    for (auto &c : cl.cliques)
    {
        std::vector<Int> t;
        for (auto i : c)
            t.push_back(vals[i]);
        std::sort(t.begin(), t.end());
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t complex_element_cutoff(const Int &bound_sq)
{
    // Half basis, v = +-1: abs_sq(u + v w) >= (1 + |d|)/4.
    Int c = 4 * bound_sq - 1;
    return c.get_si();
}

std::vector<std::int64_t> sweep_discriminants(const Int &bound_sq)
{
    Int top = 4 * bound_sq;
    std::vector<std::int64_t> ds;
    for (std::int64_t a = 1; a <= top.get_si(); ++a)
    {
        if (is_squarefree(a))
            ds.push_back(-a);
    }
    return ds;
}

SweepReport quintuple_sweep(const SweepConfig &cfg)
{
    SweepReport rep;
    rep.max_abs_sq = cfg.max_abs_sq;
    rep.target_size = cfg.target_size;
    auto ds = sweep_discriminants(cfg.max_abs_sq);

    std::optional<ResultCache> cache;
    if (cfg.cache_dir)
        cache.emplace(*cfg.cache_dir);

    std::vector<SearchResult> results(ds.size());
    std::vector<char> hits(ds.size(), 0);
    parallel_for(ds.size(), worker_count(cfg.threads, ds.size()), [&](std::size_t k, unsigned) {
        SearchConfig sc{RingSpec(ds[k]), cfg.max_abs_sq, 1, cfg.target_size, SearchMode::find_all, 1};
        bool hit = false;
        results[k] = find_m_tuples_cached(sc, cache ? &*cache : nullptr, &hit);
        hits[k] = hit ? 1 : 0;
    });
    for (std::size_t k = 0; k < ds.size(); ++k)
    {
        const auto &r = results[k];
        rep.rings.push_back(RingSweep{ds[k], r.stats.elements, r.tuples.size(), hits[k] != 0});
        for (const auto &t : r.tuples)
            rep.tuples.push_back(t);
    }
    rep.rational_tuples = find_rational_m_tuples(isqrt(cfg.max_abs_sq), cfg.target_size);
    Int ring_cutoff = 4 * cfg.max_abs_sq;
    rep.completeness = Completeness{ring_cutoff.get_si(), complex_element_cutoff(cfg.max_abs_sq),
                                    cfg.max_abs_sq + 1, 32, ds.size()};
    return rep;
}

std::vector<RingElem> extend_tuple(const DiophTuple &t, const Int &max_abs_sq)
{
    std::vector<RingElem> out;
    if (max_abs_sq < 1)
        return out;
    const RingSpec &spec = t.spec();
    const RingElem &a = t[0];
    // x^2 = a d + 1 gives abs_sq(x) <= sqrt(abs_sq(a) abs_sq(d)) + 1.
    Int x_bound = isqrt(abs_sq(a) * max_abs_sq) + 2;
    const RingElem one = RingElem::one(spec);
    for_each_up_to(spec, x_bound, [&](const RingElem &x) {
        // x and -x give the same d.
        if (sgn(x.u()) < 0 || (sgn(x.u()) == 0 && sgn(x.v()) < 0))
            return;
        auto d = divide_exact(x * x - one, a);
        if (!d || d->is_zero() || abs_sq(*d) > max_abs_sq)
            return;
        for (std::size_t i = 0; i < t.size(); ++i)
        {
            if (t[i] == *d)
                return;
        }
        for (std::size_t i = 1; i < t.size(); ++i)
        {
            if (sqrt_in_ring(t[i] * *d + one).empty())
                return;
        }
        out.push_back(std::move(*d));
    });
    std::sort(out.begin(), out.end(), CanonicalLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace dioph
