#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dioph/error.hpp"
#include "dioph/search.hpp"

namespace dioph
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

json int_json(const Int &x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Int json_int(const json &j)
{
    if (j.is_number_integer())
        return Int(j.get<long>());
    if (j.is_string())
        return Int(j.get<std::string>());
    throw Error(Errc::InvalidArgument, "expected an integer");
}

json elem_json(const RingElem &z)
{
    return json::array({int_json(z.u()), int_json(z.v())});
}

RingElem json_elem(const RingSpec &spec, const json &j)
{
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::InvalidArgument, "expected [u, v]");
    return RingElem(spec, json_int(j[0]), json_int(j[1]));
}

json tuple_json(const DiophTuple &t)
{
    json elems = json::array();
    for (const auto &e : t.elems())
        elems.push_back(elem_json(e));
    json wits = json::array();
    for (const auto &w : t.witnesses())
        wits.push_back(json::array({w.i, w.j, elem_json(w.root)}));
    json line;
    line["d"] = t.spec().d();
    line["elems"] = std::move(elems);
    line["witnesses"] = std::move(wits);
    return line;
}

// Rebuilds the tuple from its elements and checks the stored witnesses square
// to the right products.
DiophTuple json_tuple(const RingSpec &spec, const json &line)
{
    if (line.at("d").get<std::int64_t>() != spec.d())
        throw Error(Errc::InvalidArgument, "ring mismatch");
    std::vector<RingElem> elems;
    for (const auto &e : line.at("elems"))
        elems.push_back(json_elem(spec, e));
    DiophTuple t = make_tuple(spec, elems);
    if (!(t.elems() == elems))
        throw Error(Errc::InvalidArgument, "elements not in canonical order");
    const auto &wits = line.at("witnesses");
    if (wits.size() != t.witnesses().size())
        throw Error(Errc::InvalidArgument, "witness count");
    for (const auto &w : wits)
    {
        auto i = w.at(0).get<std::size_t>();
        auto j = w.at(1).get<std::size_t>();
        RingElem r = json_elem(spec, w.at(2));
        if (i >= j || j >= t.size() || !(r * r == t[i] * t[j] + RingElem::one(spec)))
            throw Error(Errc::InvalidArgument, "bad witness");
    }
    return t;
}

} // namespace

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::optional<ResultCache> ResultCache::from_env()
{
    const char *dir = std::getenv("DIOPH_CACHE_DIR");
    if (dir == nullptr || *dir == '\0')
        return std::nullopt;
    return ResultCache(dir);
}

std::string ResultCache::path_for(const RingSpec &spec, const Int &max_abs_sq, std::size_t m) const
{
    std::ostringstream name;
    name << "d" << spec.d() << "_b" << max_abs_sq.get_str() << "_m" << m << ".jsonl";
    return (fs::path(dir_) / name.str()).string();
}

std::optional<std::vector<DiophTuple>> ResultCache::load(const RingSpec &spec, const Int &max_abs_sq,
                                                         std::size_t m) const
{
    std::ifstream in(path_for(spec, max_abs_sq, m));
    if (!in)
        return std::nullopt;
    std::vector<DiophTuple> tuples;
    std::string line;
    try
    {
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            DiophTuple t = json_tuple(spec, json::parse(line));
            if (t.size() != m)
                return std::nullopt;
            for (const auto &e : t.elems())
            {
                if (abs_sq(e) > max_abs_sq)
                    return std::nullopt;
            }
            tuples.push_back(std::move(t));
        }
    }
    catch (const std::exception &)
    {
        return std::nullopt;
    }
    std::sort(tuples.begin(), tuples.end(), tuple_less);
    return tuples;
}

void ResultCache::store(const RingSpec &spec, const Int &max_abs_sq, std::size_t m,
                        const std::vector<DiophTuple> &tuples) const
{
    fs::create_directories(dir_);
    fs::path final_path = path_for(spec, max_abs_sq, m);
    std::ostringstream tag;
    tag << ".tmp." << std::this_thread::get_id();
    fs::path tmp = final_path.string() + tag.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        for (const auto &t : tuples)
            out << tuple_json(t).dump() << '\n';
        if (!out)
            throw Error(Errc::InvalidArgument, "cannot write " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

SearchResult find_m_tuples_cached(const SearchConfig &cfg, const ResultCache *cache, bool *hit)
{
    if (hit != nullptr)
        *hit = false;
    // Only complete listings are cached.
    bool cacheable = cache != nullptr && cfg.mode == SearchMode::find_all && cfg.min_abs_sq <= 1;
    if (cacheable)
    {
        if (auto tuples = cache->load(cfg.spec, cfg.max_abs_sq, cfg.target_size))
        {
            if (hit != nullptr)
                *hit = true;
            SearchResult r;
            r.count = tuples->size();
            for_each_up_to(cfg.spec, cfg.max_abs_sq, [&](const RingElem &) { ++r.stats.elements; });
            r.tuples = std::move(*tuples);
            return r;
        }
    }
    SearchResult r = find_m_tuples(cfg);
    if (cacheable)
        cache->store(cfg.spec, cfg.max_abs_sq, cfg.target_size, r.tuples);
    return r;
}

} // namespace dioph
