#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"
#include "plumbcalc/matrix.hpp"

namespace plumbcalc {

inline constexpr std::size_t kIsometryMaxRank = 12;

namespace detail {

struct IsometrySearch {
    const GramLattice& a;
    std::vector<std::size_t> order;
    // Candidate images for each basis vector of a, with their pairing vectors in b.
    std::vector<const std::vector<std::vector<std::int64_t>>*> images;
    std::vector<const std::vector<std::vector<std::int64_t>>*> image_pairings;
    std::vector<std::size_t> chosen;

    bool run(std::size_t depth) {
        if (depth == order.size()) {
            return true;
        }
        const std::size_t i = order[depth];
        const auto& cands = *images[i];
        const auto& pairs = *image_pairings[i];
        for (std::size_t c = 0; c < cands.size(); ++c) {
            bool ok = true;
            for (std::size_t prev = 0; prev < depth && ok; ++prev) {
                const std::size_t j = order[prev];
                ok = dot(pairs[c], (*images[j])[chosen[j]]) == a(i, j);
            }
            if (!ok) {
                continue;
            }
            chosen[i] = c;
            if (run(depth + 1)) {
                return true;
            }
        }
        return false;
    }
};

inline std::vector<std::size_t> bfs_order(const GramLattice& lattice) {
    const std::size_t n = lattice.rank();
    std::vector<std::size_t> order;
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        seen[root] = true;
        order.push_back(root);
        for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
            const std::size_t u = order[head];
            for (std::size_t w = 0; w < n; ++w) {
                if (!seen[w] && lattice(u, w) != 0) {
                    seen[w] = true;
                    order.push_back(w);
                }
            }
        }
    }
    return order;
}

}  // namespace detail

/// A matrix M with M^T * gram(b) * M = gram(a), i.e. column i is the image of
/// the i-th basis vector of a written in the basis of b; nullopt if the
/// lattices are not isometric.
inline std::optional<IntMatrix> isometric(const GramLattice& a, const GramLattice& b) {
    if (a.rank() > kIsometryMaxRank || b.rank() > kIsometryMaxRank) {
        throw Error(ErrorCode::RankTooLarge, "isometry search is limited to rank " +
                                                 std::to_string(kIsometryMaxRank));
    }
    const int sign_a = detail::definite_sign(a);
    const int sign_b = detail::definite_sign(b);
    if (a.rank() != b.rank()) {
        return std::nullopt;
    }
    const std::size_t n = a.rank();
    if (n == 0) {
        return IntMatrix(0, 0);
    }
    if (sign_a != sign_b || a.is_even() != b.is_even() || determinant(a) != determinant(b)) {
        return std::nullopt;
    }
    const GramLattice pa = detail::positive_version(a, sign_a);
    const GramLattice pb = detail::positive_version(b, sign_b);

    std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> by_norm;
    std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> pairings;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t norm = pa(i, i);
        if (by_norm.contains(norm)) {
            continue;
        }
        auto reps = short_vectors(pb, norm);
        std::vector<std::vector<std::int64_t>> both;
        both.reserve(2 * reps.size());
        for (auto& v : reps) {
            std::vector<std::int64_t> neg(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) {
                neg[k] = -v[k];
            }
            both.push_back(std::move(v));
            both.push_back(std::move(neg));
        }
        if (both.empty()) {
            return std::nullopt;
        }
        auto& pv = pairings[norm];
        for (const auto& v : both) {
            pv.push_back(pb.apply(v));
        }
        by_norm.emplace(norm, std::move(both));
    }

    detail::IsometrySearch search{pa, detail::bfs_order(pa), {}, {}, std::vector<std::size_t>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        search.images.push_back(&by_norm.at(pa(i, i)));
        search.image_pairings.push_back(&pairings.at(pa(i, i)));
    }
    if (!search.run(0)) {
        return std::nullopt;
    }
    IntMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = (*search.images[i])[search.chosen[i]];
        for (std::size_t k = 0; k < n; ++k) {
            m(k, i) = v[k];
        }
    }
    return m;
}

}  // namespace plumbcalc
