#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "nroot/exceptional.hpp"
#include "nroot/macdonald.hpp"
#include "nroot/nroot_set.hpp"
#include "nroot/quasiparabolic.hpp"
#include "nroot/root_system.hpp"

namespace nroot {

using Json = nlohmann::ordered_json;

inline Json rational_vector(const std::vector<int>& v) {
    Json arr = Json::array();
    for (int x : v) arr.push_back(rat_str((long long)x));
    return arr;
}

inline Json root_system_json(const RootSystem& rs) {
    Json j;
    j["type"] = rs.type().name();
    j["rank"] = rs.rank();
    j["gram"] = rs.gram();
    Json roots = Json::array(), heights = Json::array(), emb = Json::array();
    for (int i = 0; i < rs.num_positive(); ++i) {
        roots.push_back(rs.root(i));
        heights.push_back(rs.height(i));
        emb.push_back(rational_vector(rs.embedding(i)));
    }
    j["roots"] = roots;
    j["heights"] = heights;
    j["embedding"] = emb;
    return j;
}

inline Json nroots_json(const NRootSet& X) {
    Json j;
    j["type"] = X.root_system().type().name();
    j["count"] = X.size();
    Json items = Json::array();
    for (int x = 0; x < X.size(); ++x) {
        Json item;
        item["id"] = x;
        item["components"] = X.components(x);
        Json emb = Json::array();
        for (uint16_t c : X.components(x))
            emb.push_back(rational_vector(X.root_system().embedding(c)));
        item["embedding"] = emb;
        if (X.root_system().type().family == Family::D) {
            Json blocks = Json::array();
            for (auto [a, b] : X.matching_of(x)) blocks.push_back(Json::array({a, b}));
            item["matching"] = blocks;
        }
        items.push_back(item);
    }
    j["nroots"] = items;
    return j;
}

inline std::string hasse_edges_text(const QPStructure& qp) {
    std::ostringstream os;
    os << "# levels:";
    for (int x = 0; x < qp.nroots().size(); ++x) os << ' ' << qp.level(x);
    os << '\n';
    for (auto [a, b] : qp.covers()) os << a << ' ' << b << '\n';
    return os.str();
}

inline std::string graph_edges_text(const Graph& g) {
    std::ostringstream os;
    os << "# vertices: " << g.size() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
    return os.str();
}

inline std::string graph_dot_text(const Graph& g) {
    std::ostringstream os;
    os << "graph " << g.source << " {\n";
    for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

inline Json bases_json(const MacEngine& mac, const std::string& kind) {
    const auto& ids =
        kind == "noncrossing" ? mac.noncrossing_basis() : mac.nonnesting_basis();
    Json j;
    j["type"] = mac.nroots().root_system().type().name();
    j["kind"] = kind;
    j["dimension"] = mac.dimension();
    Json items = Json::array();
    for (int x : ids) {
        Json item;
        item["id"] = x;
        item["components"] = mac.nroots().components(x);
        items.push_back(item);
    }
    j["elements"] = items;
    return j;
}

inline Json cob_json(const MacEngine& mac) {
    auto cob = mac.change_of_basis();
    Json j;
    j["type"] = mac.nroots().root_system().type().name();
    j["nonnesting_order"] = cob.nonnesting_order;
    j["noncrossing_order"] = cob.noncrossing_order;
    Json m = Json::array(), inv = Json::array();
    for (const auto& row : cob.matrix)
        for (long long v : row) m.push_back(v);
    for (const auto& row : cob.inverse)
        for (long long v : row) inv.push_back(v);
    j["matrix_row_major"] = m;
    j["inverse_row_major"] = inv;
    return j;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << bytes;
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace nroot
