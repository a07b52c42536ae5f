#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"

namespace plumbcalc {

struct PlumbingVertex {
    std::int64_t id;
    std::int64_t weight;

    friend bool operator==(const PlumbingVertex&, const PlumbingVertex&) = default;
};

/// Weighted tree. Vertices are addressed by position; ids are kept only for
/// I/O. Construction validates that the graph is a tree.
class PlumbingGraph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    PlumbingGraph(std::vector<PlumbingVertex> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)), adjacency_(vertices_.size()) {
        validate();
    }

    /// Vertices with ids 0..n-1 and the given weights.
    static PlumbingGraph from_weights(const std::vector<std::int64_t>& weights, std::vector<Edge> edges) {
        std::vector<PlumbingVertex> vs;
        vs.reserve(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            vs.push_back({static_cast<std::int64_t>(i), weights[i]});
        }
        return PlumbingGraph(std::move(vs), std::move(edges));
    }

    /// Edges given by vertex ids rather than positions.
    static PlumbingGraph from_ids(std::vector<PlumbingVertex> vertices,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& id_edges) {
        std::unordered_map<std::int64_t, std::size_t> index;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (!index.emplace(vertices[i].id, i).second) {
                throw Error(ErrorCode::InvalidArgument, "duplicate vertex id " + std::to_string(vertices[i].id));
            }
        }
        std::vector<Edge> edges;
        for (const auto& [a, b] : id_edges) {
            auto ia = index.find(a);
            auto ib = index.find(b);
            if (ia == index.end() || ib == index.end()) {
                throw Error(ErrorCode::InvalidArgument, "edge refers to an unknown vertex id");
            }
            edges.emplace_back(ia->second, ib->second);
        }
        return PlumbingGraph(std::move(vertices), std::move(edges));
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<PlumbingVertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::int64_t weight(std::size_t v) const { return vertices_.at(v).weight; }
    std::int64_t id(std::size_t v) const { return vertices_.at(v).id; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
    std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

    friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    void validate() {
        const std::size_t n = vertices_.size();
        if (n == 0) {
            throw Error(ErrorCode::NotATree, "plumbing graph has no vertices");
        }
        std::vector<std::int64_t> ids;
        for (const auto& v : vertices_) {
            ids.push_back(v.id);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw Error(ErrorCode::InvalidArgument, "duplicate vertex id");
        }
        for (const auto& [a, b] : edges_) {
            if (a >= n || b >= n) {
                throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
            }
            if (a == b) {
                throw Error(ErrorCode::NotATree, "self-plumbing at vertex " + std::to_string(id(a)));
            }
            if (std::find(adjacency_[a].begin(), adjacency_[a].end(), b) != adjacency_[a].end()) {
                throw Error(ErrorCode::NotATree, "repeated edge");
            }
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        if (edges_.size() + 1 != n) {
            throw Error(ErrorCode::NotATree, "a tree on " + std::to_string(n) + " vertices has " +
                                                 std::to_string(n - 1) + " edges, got " +
                                                 std::to_string(edges_.size()));
        }
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adjacency_[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != n) {
            throw Error(ErrorCode::NotATree, "plumbing graph is disconnected");
        }
    }

    std::vector<PlumbingVertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

inline GramLattice graph_to_gram(const PlumbingGraph& graph) {
    IntMatrix m(graph.size(), graph.size(), 0);
    for (std::size_t v = 0; v < graph.size(); ++v) {
        m(v, v) = graph.weight(v);
    }
    for (const auto& [a, b] : graph.edges()) {
        m(a, b) = 1;
        m(b, a) = 1;
    }
    return GramLattice(std::move(m));
}

/// A star: centre weight plus legs listed from the centre outward.
inline PlumbingGraph star_graph(std::int64_t centre, const std::vector<std::vector<std::int64_t>>& legs) {
    std::vector<std::int64_t> weights{centre};
    std::vector<PlumbingGraph::Edge> edges;
    for (const auto& leg : legs) {
        std::size_t prev = 0;
        for (std::int64_t w : leg) {
            weights.push_back(w);
            edges.emplace_back(prev, weights.size() - 1);
            prev = weights.size() - 1;
        }
    }
    return PlumbingGraph::from_weights(weights, std::move(edges));
}

}  // namespace plumbcalc
