#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arrangement.hpp"
#include "cdga.hpp"
#include "chain.hpp"
#include "errors.hpp"
#include "fox.hpp"

namespace alexmod {

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_hex(const std::string& data) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path) {
    return parse_json_text(read_file(path));
}

namespace detail {

inline void require_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                         const char* what) {
    if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& k : allowed) known = known || key == k;
        if (!known)
            throw InvalidInput("unknown key '" + key + "' in " + what);
    }
}

inline std::size_t parse_degree_key(const std::string& key) {
    if (key.empty()) throw InvalidInput("empty degree key");
    std::size_t value = 0;
    for (char c : key) {
        if (c < '0' || c > '9')
            throw InvalidInput("degree key '" + key + "' is not a nonnegative integer");
        if (value > (std::size_t(-1) - 9) / 10) throw InvalidInput("degree key too large");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

inline Rat json_rat(const nlohmann::json& v, const char* what) {
    if (!v.is_string())
        throw InvalidInput(std::string(what) + " must be a rational written as a string");
    return parse_rat(v.get<std::string>());
}

inline long long json_int(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer())
        throw InvalidInput(std::string(what) + " must be an integer");
    return v.get<long long>();
}

}  // namespace detail

// {"ranks": {"0": 1, "1": 3}, "boundaries": {"1": [["t-1","t-1","t-1"]]}}
inline FreeRChainComplex load_complex(const nlohmann::json& j) {
    detail::require_keys(j, {"ranks", "boundaries"}, "complex file");
    if (!j.contains("ranks") || !j.at("ranks").is_object())
        throw InvalidInput("complex file needs a 'ranks' object");

    std::map<std::size_t, std::size_t> ranks;
    for (const auto& [key, value] : j.at("ranks").items()) {
        const std::size_t deg = detail::parse_degree_key(key);
        const long long r = detail::json_int(value, "rank");
        if (r < 0) throw InvalidInput("rank in degree " + key + " is negative");
        ranks[deg] = static_cast<std::size_t>(r);
    }

    auto rank_of = [&](std::size_t deg) -> std::size_t {
        auto it = ranks.find(deg);
        return it == ranks.end() ? 0 : it->second;
    };

    std::map<std::size_t, RMatrix> boundaries;
    if (j.contains("boundaries")) {
        if (!j.at("boundaries").is_object())
            throw InvalidInput("'boundaries' must be an object");
        for (const auto& [key, rows] : j.at("boundaries").items()) {
            const std::size_t deg = detail::parse_degree_key(key);
            if (deg == 0) throw InvalidInput("boundary out of degree 0 is not allowed");
            if (!rows.is_array()) throw InvalidInput("boundary " + key + " must be an array");
            const std::size_t nrows = rank_of(deg - 1);
            const std::size_t ncols = rank_of(deg);
            if (rows.size() != nrows)
                throw InvalidInput("boundary " + key + " has " +
                                   std::to_string(rows.size()) + " rows, expected " +
                                   std::to_string(nrows));
            RMatrix m(nrows, ncols);
            for (std::size_t i = 0; i < nrows; ++i) {
                if (!rows[i].is_array() || rows[i].size() != ncols)
                    throw InvalidInput("row " + std::to_string(i) + " of boundary " + key +
                                       " must have " + std::to_string(ncols) + " entries");
                for (std::size_t c = 0; c < ncols; ++c) {
                    if (!rows[i][c].is_string())
                        throw InvalidInput("boundary entries must be strings");
                    m.at(i, c) = parse_laurent(rows[i][c].get<std::string>());
                }
            }
            boundaries.emplace(deg, std::move(m));
        }
    }
    return FreeRChainComplex(std::move(ranks), std::move(boundaries));
}

// {"generators": ["a","b"], "relators": ["a b a^-1 b^-1"], "epsilon": {"a":1,"b":1}}
inline GroupPresentation load_presentation(const nlohmann::json& j) {
    detail::require_keys(j, {"generators", "relators", "epsilon"}, "presentation file");
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw InvalidInput("presentation file needs a 'generators' array");
    if (!j.contains("epsilon") || !j.at("epsilon").is_object())
        throw InvalidInput("presentation file needs an 'epsilon' object");

    std::vector<std::string> generators;
    for (const auto& g : j.at("generators")) {
        if (!g.is_string()) throw InvalidInput("generator names must be strings");
        generators.push_back(g.get<std::string>());
    }
    std::vector<std::string> relators;
    if (j.contains("relators")) {
        if (!j.at("relators").is_array()) throw InvalidInput("'relators' must be an array");
        for (const auto& r : j.at("relators")) {
            if (!r.is_string()) throw InvalidInput("relators must be strings");
            relators.push_back(r.get<std::string>());
        }
    }
    std::map<std::string, long long> epsilon;
    for (const auto& [key, value] : j.at("epsilon").items())
        epsilon[key] = detail::json_int(value, "epsilon value");
    return GroupPresentation(std::move(generators), std::move(relators), epsilon);
}

// {"ambient_dim": 2, "hyperplanes": [{"normal": ["1","0"], "offset": "0",
//  "multiplicity": 1}]}
inline Arrangement load_arrangement(const nlohmann::json& j) {
    detail::require_keys(j, {"ambient_dim", "hyperplanes"}, "arrangement file");
    if (!j.contains("ambient_dim"))
        throw InvalidInput("arrangement file needs 'ambient_dim'");
    const long long n = detail::json_int(j.at("ambient_dim"), "ambient_dim");
    if (n < 1) throw InvalidInput("ambient_dim must be positive");

    Arrangement a;
    a.ambient_dim = static_cast<std::size_t>(n);
    if (j.contains("hyperplanes")) {
        if (!j.at("hyperplanes").is_array())
            throw InvalidInput("'hyperplanes' must be an array");
        for (const auto& h : j.at("hyperplanes")) {
            detail::require_keys(h, {"normal", "offset", "multiplicity"}, "hyperplane");
            if (!h.contains("normal") || !h.at("normal").is_array())
                throw InvalidInput("hyperplane needs a 'normal' array");
            if (!h.contains("offset")) throw InvalidInput("hyperplane needs an 'offset'");
            Hyperplane hp;
            for (const auto& c : h.at("normal"))
                hp.normal.push_back(detail::json_rat(c, "normal entry"));
            hp.offset = detail::json_rat(h.at("offset"), "offset");
            hp.multiplicity =
                h.contains("multiplicity")
                    ? detail::json_int(h.at("multiplicity"), "multiplicity")
                    : 1;
            a.hyperplanes.push_back(std::move(hp));
        }
    }
    validate_arrangement(a);
    return a;
}

// {"basis": [{"name":"u","degree":0},...], "unit": "u",
//  "products": [{"left":"e1","right":"e2","value":"e1_2"}]}
// Only one order of each pair needs to be given; the reverse is filled in by
// graded commutativity unless the file provides it explicitly.
inline CDGA load_cdga(const nlohmann::json& j) {
    detail::require_keys(j, {"basis", "unit", "products"}, "cdga file");
    if (!j.contains("basis") || !j.at("basis").is_array())
        throw InvalidInput("cdga file needs a 'basis' array");
    if (!j.contains("unit") || !j.at("unit").is_string())
        throw InvalidInput("cdga file needs a 'unit' name");

    std::vector<BasisElement> basis;
    for (const auto& b : j.at("basis")) {
        detail::require_keys(b, {"name", "degree"}, "basis element");
        if (!b.contains("name") || !b.at("name").is_string())
            throw InvalidInput("basis element needs a 'name' string");
        if (!b.contains("degree"))
            throw InvalidInput("basis element needs a 'degree'");
        const long long deg = detail::json_int(b.at("degree"), "degree");
        if (deg < 0) throw InvalidInput("basis degrees must be nonnegative");
        basis.push_back(BasisElement{b.at("name").get<std::string>(),
                                     static_cast<std::size_t>(deg)});
    }
    // a products-free skeleton resolves names and validates the basis itself
    CDGA skeleton(basis, [&] {
        const std::string unit = j.at("unit").get<std::string>();
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == unit) return i;
        throw InvalidInput("unit '" + unit + "' is not a basis name");
    }(), {});

    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> products;
    if (j.contains("products")) {
        if (!j.at("products").is_array()) throw InvalidInput("'products' must be an array");
        for (const auto& p : j.at("products")) {
            detail::require_keys(p, {"left", "right", "value"}, "product entry");
            for (const char* field : {"left", "right", "value"})
                if (!p.contains(field) || !p.at(field).is_string())
                    throw InvalidInput(std::string("product entry needs a '") + field +
                                       "' string");
            auto li = skeleton.index_of(p.at("left").get<std::string>());
            auto ri = skeleton.index_of(p.at("right").get<std::string>());
            if (!li) throw InvalidInput("unknown basis name '" +
                                        p.at("left").get<std::string>() + "'");
            if (!ri) throw InvalidInput("unknown basis name '" +
                                        p.at("right").get<std::string>() + "'");
            if (products.count({*li, *ri}))
                throw InvalidInput("duplicate product entry for " +
                                   basis[*li].name + "*" + basis[*ri].name);
            products.emplace(std::make_pair(*li, *ri),
                             parse_combination(p.at("value").get<std::string>(), skeleton));
        }
    }
    for (const auto& [key, value] : std::map(products)) {
        const auto rev = std::make_pair(key.second, key.first);
        if (products.count(rev)) continue;
        const bool odd = basis[key.first].degree % 2 == 1 &&
                         basis[key.second].degree % 2 == 1;
        std::vector<Rat> mirrored = value;
        if (odd)
            for (Rat& c : mirrored) c = -c;
        products.emplace(rev, std::move(mirrored));
    }
    return CDGA(std::move(basis), skeleton.unit_index(), std::move(products));
}

}  // namespace alexmod
