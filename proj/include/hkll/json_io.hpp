#pragma once

// JSON ingestion and serialization for the CLI layer. Conventions:
// exact integers and rationals travel as decimal strings ("p" or "p/q")
// so no value is ever forced through floating point; small structural
// numbers (ranks, indices, multiplicities) stay plain JSON numbers.
// Parsers accept either representation. Malformed documents raise
// std::invalid_argument with a path-like description of the offender.

#include "hkll/gerbe.hpp"
#include "hkll/lattice.hpp"
#include "hkll/weierstrass.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace hkll {

using json = nlohmann::ordered_json;

// ---- scalars ----

inline json int_to_json(const Int& v) { return json(v.str()); }

inline json rat_to_json(const Rat& v) { return json(format_rat(v)); }

inline Int json_to_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            Rat r = parse_rat(j.get<std::string>());
            if (denominator(r) != 1)
                throw std::invalid_argument(where + ": expected an integer, got " + j.get<std::string>());
            return numerator(r);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(where + ": not an integer: " + j.get<std::string>());
        }
    }
    throw std::invalid_argument(where + ": expected an integer (number or decimal string)");
}

inline Rat json_to_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(where + ": not a rational: " + j.get<std::string>());
        }
    }
    throw std::invalid_argument(where + ": expected a rational (number or \"p/q\" string)");
}

// ---- vectors ----

inline json intvec_to_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

inline IntVec json_to_intvec(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": expected an array");
    IntVec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(json_to_int(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline json ratvec_to_json(const RatVec& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(rat_to_json(x));
    return a;
}

inline RatVec json_to_ratvec(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": expected an array");
    RatVec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(json_to_rat(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

// ---- lattices ----

// {"rank": k, "gram": [[...], ...]}  (gram entries: numbers or strings)
inline json lattice_to_json(const IntegralLattice& L) {
    const auto rank = static_cast<std::size_t>(L.rank());
    json g = json::array();
    for (std::size_t i = 0; i < rank; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < rank; ++k) row.push_back(int_to_json(L.gram()[i][k]));
        g.push_back(std::move(row));
    }
    return json{{"rank", L.rank()}, {"gram", std::move(g)}};
}

inline IntegralLattice json_to_lattice(const json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("gram"))
        throw std::invalid_argument("lattice: expected {\"rank\": k, \"gram\": [[...], ...]}");
    const Int rank_i = json_to_int(j["rank"], "lattice.rank");
    if (rank_i <= 0) throw std::invalid_argument("lattice.rank: must be positive");
    const auto rank = static_cast<std::size_t>(rank_i);
    const json& g = j["gram"];
    if (!g.is_array() || g.size() != rank)
        throw std::invalid_argument("lattice.gram: expected " + std::to_string(rank) + " rows");
    IntMat gram;
    gram.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        IntVec row = json_to_intvec(g[i], "lattice.gram[" + std::to_string(i) + "]");
        if (row.size() != rank)
            throw std::invalid_argument("lattice.gram[" + std::to_string(i) + "]: expected " +
                                        std::to_string(rank) + " entries");
        gram.push_back(std::move(row));
    }
    return IntegralLattice{std::move(gram)};
}

// Root lists: either a bare array of integer vectors or {"roots": [...]}.
inline std::vector<IntVec> json_to_root_list(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("roots")) throw std::invalid_argument("roots: expected an array or {\"roots\": [...]}");
        arr = &j["roots"];
    }
    if (!arr->is_array()) throw std::invalid_argument("roots: expected an array of integer vectors");
    std::vector<IntVec> out;
    out.reserve(arr->size());
    for (std::size_t i = 0; i < arr->size(); ++i)
        out.push_back(json_to_intvec((*arr)[i], "roots[" + std::to_string(i) + "]"));
    return out;
}

// ---- binary forms ----

inline json binary_form_to_json(const BinaryForm& f) { return ratvec_to_json(f.coeffs); }

// Coefficient array c with c[i] the t^i s^(d-i) coefficient; fewer than
// d+1 entries means the remaining top coefficients are zero.
inline BinaryForm json_to_binary_form(const json& j, int degree, const std::string& where) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("coeffs")) throw std::invalid_argument(where + ": expected an array or {\"coeffs\": [...]}");
        arr = &j["coeffs"];
    }
    RatVec c = json_to_ratvec(*arr, where);
    if (c.size() > static_cast<std::size_t>(degree) + 1)
        throw std::invalid_argument(where + ": at most " + std::to_string(degree + 1) +
                                    " coefficients for a degree " + std::to_string(degree) + " form");
    c.resize(static_cast<std::size_t>(degree) + 1, Rat(0));
    return BinaryForm{degree, std::move(c)};
}

// ---- nerves and gerbe data ----

inline json nerve_to_json(const CoverNerve& n) {
    json pairs = json::array();
    for (const Pair& p : n.pairs) pairs.push_back(json::array({p[0], p[1]}));
    json triples = json::array();
    for (const Triple& t : n.triples) triples.push_back(json::array({t[0], t[1], t[2]}));
    json quads = json::array();
    for (const Quad& q : n.quads) quads.push_back(json::array({q[0], q[1], q[2], q[3]}));
    return json{{"index_count", n.index_count},
                {"pairs", std::move(pairs)},
                {"triples", std::move(triples)},
                {"quads", std::move(quads)}};
}

namespace detail {

template <std::size_t K>
std::vector<std::array<int, K>> json_to_tuples(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of index tuples");
    std::vector<std::array<int, K>> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != K)
            throw std::invalid_argument(at + ": expected " + std::to_string(K) + " indices");
        std::array<int, K> tup{};
        for (std::size_t k = 0; k < K; ++k) {
            Int v = json_to_int(t[k], at);
            if (v < 0 || v > 1000000) throw std::invalid_argument(at + ": index out of range");
            tup[k] = static_cast<int>(v);
        }
        out.push_back(tup);
    }
    return out;
}

}  // namespace detail

// Accepts {"index_count": k, "triangles": [[i,j,l], ...]} (nerve of the
// closed surface glued from those triangles) or explicit tuple lists
// {"index_count": k, "pairs": [...], "triples": [...], "quads": [...]}.
inline CoverNerve json_to_nerve(const json& j) {
    if (!j.is_object() || !j.contains("index_count"))
        throw std::invalid_argument("nerve: expected an object with \"index_count\"");
    const Int count_i = json_to_int(j["index_count"], "nerve.index_count");
    if (count_i <= 0 || count_i > 1000000) throw std::invalid_argument("nerve.index_count: out of range");
    const int count = static_cast<int>(count_i);
    if (j.contains("triangles"))
        return nerve_from_triangles(count, detail::json_to_tuples<3>(j["triangles"], "nerve.triangles"));
    std::vector<Pair> pairs;
    std::vector<Triple> triples;
    std::vector<Quad> quads;
    if (j.contains("pairs")) pairs = detail::json_to_tuples<2>(j["pairs"], "nerve.pairs");
    if (j.contains("triples")) triples = detail::json_to_tuples<3>(j["triples"], "nerve.triples");
    if (j.contains("quads")) quads = detail::json_to_tuples<4>(j["quads"], "nerve.quads");
    return CoverNerve{count, std::move(pairs), std::move(triples), std::move(quads)};
}

// {"i,j,k": value, ...} with i<j<k; values are integers or "p/q" strings.
// Triples absent from the document get coefficient zero.
inline std::map<Triple, Rat> json_to_beta(const json& j, const CoverNerve& nerve) {
    if (!j.is_object()) throw std::invalid_argument("beta: expected an object mapping \"i,j,k\" to values");
    std::map<Triple, Rat> beta;
    for (const Triple& t : nerve.triples) beta[t] = Rat(0);
    for (const auto& [key, value] : j.items()) {
        std::array<int, 3> idx{};
        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k) {
            std::size_t next = key.find(',', pos);
            std::string part = key.substr(pos, next == std::string::npos ? next : next - pos);
            if (part.empty() || (next == std::string::npos) != (k == 2))
                throw std::invalid_argument("beta key \"" + key + "\": expected \"i,j,k\"");
            try {
                std::size_t used = 0;
                idx[k] = std::stoi(part, &used);
                if (used != part.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw std::invalid_argument("beta key \"" + key + "\": expected \"i,j,k\"");
            }
            pos = next + 1;
        }
        if (!(idx[0] < idx[1] && idx[1] < idx[2]))
            throw std::invalid_argument("beta key \"" + key + "\": indices must be strictly increasing");
        Triple t{idx[0], idx[1], idx[2]};
        if (!nerve.has_triple(t))
            throw std::invalid_argument("beta key \"" + key + "\": triple overlap not in the nerve");
        beta[t] = json_to_rat(value, "beta[\"" + key + "\"]");
    }
    return beta;
}

inline json beta_to_json(const std::map<Triple, Rat>& beta) {
    json out = json::object();
    for (const auto& [t, v] : beta)
        out[std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2])] = rat_to_json(v);
    return out;
}

inline json alpha_to_json(const std::map<Pair, Rat>& alpha) {
    json out = json::object();
    for (const auto& [p, v] : alpha)
        out[std::to_string(p[0]) + "," + std::to_string(p[1])] = rat_to_json(v);
    return out;
}

}  // namespace hkll
