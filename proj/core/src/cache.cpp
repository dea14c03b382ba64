#include "perftower/error.hpp"
#include "perftower/ideal.hpp"
#include "perftower/parse.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <iostream>
#include <sstream>

namespace perftower {

GBDataPtr compute_strong_gb_uncached(const AmbientPtr& lifted_ambient,
                                     const std::vector<Polynomial>& lifted_gens,
                                     bool has_modulus_gen, const MonomialOrder& order,
                                     bool want_provenance);

namespace {

std::atomic<std::uint64_t> g_queries{0};
std::atomic<std::uint64_t> g_computed{0};

std::mutex g_cache_mu;
std::map<std::string, GBDataPtr> g_memory_cache;
std::shared_ptr<GBCacheBackend> g_backend;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string request_header(const AmbientPtr& lifted_ambient,
                           const std::vector<Polynomial>& lifted_gens,
                           const MonomialOrder& order) {
    std::ostringstream out;
    out << "ambient " << lifted_ambient->to_string() << "\n";
    out << "order " << order.to_string() << "\n";
    out << "gens " << lifted_gens.size() << "\n";
    for (const auto& g : lifted_gens)
        out << g.to_string() << "\n";
    return out.str();
}

} // namespace

GBStats gb_stats_snapshot() { return GBStats{g_queries.load(), g_computed.load()}; }

void set_gb_cache_backend(std::shared_ptr<GBCacheBackend> backend) {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    g_backend = std::move(backend);
}

void clear_gb_memory_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    g_memory_cache.clear();
}

std::string gb_cache_key(const AmbientPtr& lifted_ambient,
                         const std::vector<Polynomial>& lifted_gens,
                         const MonomialOrder& order) {
    std::uint64_t h = fnv1a(request_header(lifted_ambient, lifted_gens, order));
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string serialize_gb(const GBData& gb) {
    std::ostringstream out;
    out << "perftower-gb v1\n";
    out << request_header(gb.lifted_ambient, gb.lifted_gens, gb.order);
    out << "modulus_gen " << (gb.has_modulus_gen ? 1 : 0) << "\n";
    out << "provenance " << (gb.has_provenance ? 1 : 0) << "\n";
    out << "basis " << gb.basis.size() << "\n";
    for (const auto& e : gb.basis) {
        out << "poly " << e.poly.to_string() << "\n";
        if (gb.has_provenance) {
            out << "prov";
            for (const auto& p : e.provenance)
                out << " ; " << p.to_string();
            out << "\n";
        }
    }
    return out.str();
}

GBDataPtr deserialize_gb(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next = [&](const std::string& prefix) -> std::string {
        if (!std::getline(in, line))
            fail("parse-error", "truncated GB payload");
        if (line.rfind(prefix, 0) != 0)
            fail("parse-error", "bad GB payload line: " + line);
        return line.substr(prefix.size());
    };
    if (next("perftower-gb ") != "v1")
        fail("parse-error", "unknown GB payload version");
    std::string amb_str = next("ambient ");
    auto lb = amb_str.find('[');
    if (lb == std::string::npos || amb_str.back() != ']')
        fail("parse-error", "bad ambient in GB payload");
    CoefficientRing ring = parse_coeff_ring(amb_str.substr(0, lb));
    std::vector<std::string> vars;
    {
        std::string inner = amb_str.substr(lb + 1, amb_str.size() - lb - 2);
        std::string cur;
        for (char c : inner) {
            if (c == ',') {
                vars.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty())
            vars.push_back(cur);
    }
    auto gb = std::make_shared<GBData>();
    gb->lifted_ambient = Ambient::make(ring, vars);

    std::string order_str = next("order ");
    if (order_str == "lex")
        gb->order = MonomialOrder::lex();
    else if (order_str == "grevlex")
        gb->order = MonomialOrder::grevlex();
    else if (order_str.rfind("block(", 0) == 0) {
        // block(k,inner); inner is lex or grevlex in every key we emit.
        auto comma = order_str.find(',');
        std::size_t k = std::stoull(order_str.substr(6, comma - 6));
        std::string inner = order_str.substr(comma + 1, order_str.size() - comma - 2);
        gb->order = MonomialOrder::block(
            k, inner == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex());
    } else {
        fail("parse-error", "unknown order in GB payload: " + order_str);
    }

    std::size_t ngens = std::stoull(next("gens "));
    for (std::size_t i = 0; i < ngens; ++i) {
        if (!std::getline(in, line))
            fail("parse-error", "truncated GB payload (gens)");
        gb->lifted_gens.push_back(parse_polynomial(line, gb->lifted_ambient));
    }
    gb->has_modulus_gen = next("modulus_gen ") == "1";
    gb->has_provenance = next("provenance ") == "1";
    std::size_t nbasis = std::stoull(next("basis "));
    for (std::size_t i = 0; i < nbasis; ++i) {
        GBElement e;
        e.poly = parse_polynomial(next("poly "), gb->lifted_ambient);
        if (gb->has_provenance) {
            std::string prov_line = next("prov");
            std::vector<std::string> parts;
            std::size_t pos = 0;
            for (;;) {
                auto sep = prov_line.find(" ; ", pos);
                if (sep == std::string::npos)
                    break;
                auto after = prov_line.find(" ; ", sep + 3);
                parts.push_back(prov_line.substr(
                    sep + 3, after == std::string::npos ? std::string::npos : after - sep - 3));
                pos = sep + 1;
            }
            if (parts.size() != ngens)
                fail("parse-error", "provenance arity mismatch in GB payload");
            for (const auto& s : parts)
                e.provenance.push_back(parse_polynomial(s, gb->lifted_ambient));
        }
        gb->basis.push_back(std::move(e));
    }
    return gb;
}

GBDataPtr compute_strong_gb(const AmbientPtr& lifted_ambient,
                            const std::vector<Polynomial>& lifted_gens,
                            bool has_modulus_gen, const MonomialOrder& order,
                            bool want_provenance) {
    g_queries.fetch_add(1);
    std::string header = request_header(lifted_ambient, lifted_gens, order);
    std::string key = gb_cache_key(lifted_ambient, lifted_gens, order);

    std::shared_ptr<GBCacheBackend> backend;
    {
        std::lock_guard<std::mutex> lock(g_cache_mu);
        auto it = g_memory_cache.find(header);
        if (it != g_memory_cache.end() &&
            (it->second->has_provenance || !want_provenance))
            return it->second;
        backend = g_backend;
    }
    if (backend) {
        if (auto payload = backend->get(key)) {
            try {
                GBDataPtr gb = deserialize_gb(*payload);
                // The payload must describe exactly this request; hash
                // collisions, stale files and corrupt entries are misses.
                if (request_header(gb->lifted_ambient, gb->lifted_gens, gb->order) == header &&
                    gb->has_modulus_gen == has_modulus_gen &&
                    (gb->has_provenance || !want_provenance)) {
                    std::lock_guard<std::mutex> lock(g_cache_mu);
                    g_memory_cache[header] = gb;
                    return gb;
                }
            } catch (const Error&) {
                std::cerr << "perftower: warning: ignoring corrupt GB cache entry " << key
                          << "\n";
            }
        }
    }

    g_computed.fetch_add(1);
    GBDataPtr gb = compute_strong_gb_uncached(lifted_ambient, lifted_gens, has_modulus_gen,
                                              order, want_provenance);
    {
        std::lock_guard<std::mutex> lock(g_cache_mu);
        g_memory_cache[header] = gb;
    }
    if (backend)
        backend->put(key, serialize_gb(*gb));
    return gb;
}

} // namespace perftower
