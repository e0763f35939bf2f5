#pragma once

#include <weylcycles/baselocus.hpp>
#include <weylcycles/cones.hpp>
#include <weylcycles/oracle.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

namespace weylcycles {

using json = nlohmann::json;

inline json int_to_json(const Int& v) { return json(static_cast<std::int64_t>(to_long(v))); }

inline json vec_to_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

inline std::vector<Int> vec_from_json(const json& a) {
    std::vector<Int> v;
    for (const auto& x : a) v.emplace_back(x.get<std::int64_t>());
    return v;
}

inline json to_json(const Space& sp) { return json{{"n", sp.n}, {"s", sp.s}}; }

inline json to_json(const DivisorClass& D) {
    return json{{"n", D.space.n}, {"s", D.space.s}, {"d", int_to_json(D.d)},
                {"m", vec_to_json(D.m)}};
}

inline json to_json(const CurveClass& c) {
    return json{{"n", c.space.n}, {"s", c.space.s}, {"delta", int_to_json(c.delta)},
                {"mu", vec_to_json(c.mu)}};
}

inline DivisorClass divisor_from_json(const json& j) {
    return DivisorClass(Space(j.at("n"), j.at("s")), Int(j.at("d").get<std::int64_t>()),
                        vec_from_json(j.at("m")));
}

inline CurveClass curve_from_json(const json& j) {
    return CurveClass(Space(j.at("n"), j.at("s")), Int(j.at("delta").get<std::int64_t>()),
                      vec_from_json(j.at("mu")));
}

inline json to_json(const WeylWord& w) {
    json a = json::array();
    for (const Move& mv : w.moves) a.push_back(mv);
    return a;
}

inline WeylWord word_from_json(const json& j) {
    WeylWord w;
    for (const auto& mv : j) w.moves.push_back(mv.get<Move>());
    return w;
}

inline json to_json(const Join& J) { return json{{"I", J.I}, {"t", J.t}}; }

inline json to_json(const OrbitCatalog& cat) {
    json j;
    j["version"] = 1;
    j["n"] = cat.space.n;
    j["s"] = cat.space.s;
    j["kind"] = cat.kind == ClassKind::curve ? "curve" : "divisor";
    j["seed"] = json{{"degree", int_to_json(cat.seed_degree)},
                     {"coeffs", vec_to_json(cat.seed_coeffs)}};
    j["degree_bound"] = int_to_json(cat.degree_bound);
    j["complete"] = cat.complete;
    j["filter_version"] = OrbitCatalog::filter_version;
    j["moves"] = to_string(cat.moves);
    j["boundary_count"] = cat.boundary_count;
    json elems = json::array();
    for (std::size_t i = 0; i < cat.size(); ++i) {
        const auto& e = cat.elements[i];
        elems.push_back(json{{"degree", int_to_json(e.degree)},
                             {"coeffs", vec_to_json(e.coeffs)},
                             {"witness", to_json(cat.witness(i))}});
    }
    j["elements"] = std::move(elems);
    return j;
}

inline json to_json(const WeylPlane& p) {
    json j;
    j["r"] = p.r;
    j["curve"] = to_json(p.curve);
    j["witness"] = to_json(p.witness);
    j["provenance"] = p.provenance == PlaneProvenance::closed_form ? "closed-form" : "bfs";
    if (p.join) j["join"] = to_json(*p.join);
    if (p.exceptional_index) j["exceptional_index"] = *p.exceptional_index;
    return j;
}

inline json to_json(const RationalCone& C) {
    json gens = json::array();
    for (const auto& g : C.generators) gens.push_back(vec_to_json(g));
    return json{{"ambient_dim", C.ambient_dim}, {"generators", std::move(gens)}};
}

inline json to_json(const WeylBaseLocus& bl) {
    json comps = json::array();
    for (const auto& [plane, mult] : bl.components) {
        json c = to_json(plane);
        c["multiplicity"] = int_to_json(mult);
        comps.push_back(std::move(c));
    }
    return json{{"divisor", to_json(bl.divisor)},
                {"components", std::move(comps)},
                {"catalog_bound", int_to_json(bl.catalog_bound)},
                {"complete", bl.complete}};
}

inline json to_json(const ChamberSignature& sig) {
    json signs = json::array();
    for (const auto& [key, sgn] : sig.signs)
        signs.push_back(json{{"delta", int_to_json(key.first)},
                             {"mu", vec_to_json(key.second)},
                             {"sign", sgn}});
    return json{{"divisor", to_json(sig.divisor)},
                {"catalog_bound", int_to_json(sig.catalog_bound)},
                {"complete", sig.complete},
                {"signs", std::move(signs)}};
}

/// Version hash embedded in every CLI output for reproducibility.
inline std::uint64_t catalog_version_hash(const json& payload) {
    return fnv1a(payload.dump() + "|" + OrbitCatalog::filter_version);
}

// -- catalog cache ---------------------------------------------------------------

inline std::string orbit_cache_key(const Space& sp, ClassKind kind, const Int& seed_degree,
                                   const std::vector<Int>& seed_coeffs, const Int& bound,
                                   MoveSet moves) {
    std::string key = std::to_string(sp.n) + "_" + std::to_string(sp.s) + "_" +
                      (kind == ClassKind::curve ? "c" : "d") + "_" +
                      detail::format_class_body(seed_degree, seed_coeffs) + "_" + bound.str() +
                      "_" + to_string(moves) + "_" + OrbitCatalog::filter_version;
    return "orbit_" + std::to_string(fnv1a(key)) + ".json";
}

inline std::optional<OrbitCatalog> orbit_cache_load(const std::filesystem::path& dir,
                                                    const std::string& file) {
    std::ifstream in(dir / file);
    if (!in) return std::nullopt;
    json j;
    in >> j;
    OrbitCatalog cat;
    cat.space = Space(j.at("n"), j.at("s"));
    cat.kind = j.at("kind") == "curve" ? ClassKind::curve : ClassKind::divisor;
    cat.seed_degree = Int(j.at("seed").at("degree").get<std::int64_t>());
    cat.seed_coeffs = vec_from_json(j.at("seed").at("coeffs"));
    cat.degree_bound = Int(j.at("degree_bound").get<std::int64_t>());
    cat.complete = j.at("complete");
    cat.moves = j.at("moves") == "cremona" ? MoveSet::cremona : MoveSet::cremona_and_permutations;
    cat.boundary_count = j.at("boundary_count");
    // Parent links are not serialized; loaded catalogs carry words inline.
    cat.elements.clear();
    for (const auto& e : j.at("elements")) {
        OrbitElement el;
        el.degree = Int(e.at("degree").get<std::int64_t>());
        el.coeffs = vec_from_json(e.at("coeffs"));
        el.parent = -1;
        cat.elements.push_back(std::move(el));
        cat.explicit_witnesses.push_back(word_from_json(e.at("witness")));
    }
    return cat;
}

inline void orbit_cache_store(const std::filesystem::path& dir, const std::string& file,
                              const OrbitCatalog& cat) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / file);
    if (!out) return;  // cache is best-effort
    out << to_json(cat).dump(1) << "\n";
}

}  // namespace weylcycles
