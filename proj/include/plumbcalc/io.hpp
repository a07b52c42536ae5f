#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "plumbcalc/error.hpp"
#include "plumbcalc/plumbing/chain.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/seifert.hpp"

namespace plumbcalc::io {

using nlohmann::json;

namespace detail {

template <typename Fn>
auto parsing(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed ") + what + " JSON: " + e.what());
    }
}

}  // namespace detail

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
    }
}

/// {"vertices": [{"id": int, "weight": int}], "edges": [[id, id]]}
inline PlumbingGraph graph_from_json(const json& j) {
    return detail::parsing("graph", [&] {
        std::vector<PlumbingVertex> vertices;
        for (const auto& v : j.at("vertices")) {
            vertices.push_back({v.at("id").get<std::int64_t>(), v.at("weight").get<std::int64_t>()});
        }
        std::vector<std::pair<std::int64_t, std::int64_t>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw Error(ErrorCode::InvalidArgument, "edge must be a pair of ids");
            }
            edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
        }
        return PlumbingGraph::from_ids(std::move(vertices), edges);
    });
}

inline json to_json(const PlumbingGraph& g) {
    json vertices = json::array();
    for (const auto& v : g.vertices()) {
        vertices.push_back({{"id", v.id}, {"weight", v.weight}});
    }
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) {
        edges.push_back({g.id(a), g.id(b)});
    }
    return {{"vertices", vertices}, {"edges", edges}};
}

/// {"framings": [...], "marked_link": {"index": int, "k": int}}; the marked
/// link is optional.
inline ChainDiagram chain_from_json(const json& j) {
    return detail::parsing("chain", [&] {
        auto framings = j.at("framings").get<std::vector<std::int64_t>>();
        std::optional<MarkedLink> marked;
        if (j.contains("marked_link") && !j.at("marked_link").is_null()) {
            const auto& m = j.at("marked_link");
            const auto index = m.at("index").get<std::int64_t>();
            if (index < 0) {
                throw Error(ErrorCode::InvalidArgument, "marked link index must be non-negative");
            }
            marked = MarkedLink{static_cast<std::size_t>(index), m.at("k").get<std::int64_t>()};
        }
        return ChainDiagram(std::move(framings), marked);
    });
}

inline json to_json(const ChainDiagram& c) {
    json j{{"framings", c.framings()}};
    if (c.marked_link()) {
        j["marked_link"] = {{"index", c.marked_link()->index}, {"k", c.marked_link()->k}};
    }
    return j;
}

/// {"e": int, "branches": [[a, b], ...]}
inline SeifertData seifert_from_json(const json& j) {
    return detail::parsing("Seifert", [&] {
        std::vector<SeifertBranch> branches;
        for (const auto& b : j.at("branches")) {
            if (!b.is_array() || b.size() != 2) {
                throw Error(ErrorCode::InvalidArgument, "branch must be a pair [a, b]");
            }
            branches.push_back({b[0].get<std::int64_t>(), b[1].get<std::int64_t>()});
        }
        return SeifertData(j.at("e").get<std::int64_t>(), std::move(branches));
    });
}

inline json to_json(const SeifertData& s) {
    json branches = json::array();
    for (const auto& b : s.branches()) {
        branches.push_back({b.a, b.b});
    }
    return {{"e", s.e()}, {"branches", branches}};
}

}  // namespace plumbcalc::io
