#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

struct MarkedLink {
    std::size_t index;  // link between framings[index] and framings[index + 1]
    std::int64_t k;

    friend bool operator==(const MarkedLink&, const MarkedLink&) = default;
};

/// Linear diagram: a chain of framed unknots, consecutive components linking
/// once except at one optional marked link.
class ChainDiagram {
public:
    explicit ChainDiagram(std::vector<std::int64_t> framings, std::optional<MarkedLink> marked = std::nullopt)
        : framings_(std::move(framings)), marked_(marked) {
        if (framings_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "chain diagram needs at least one component");
        }
        if (marked_ && marked_->index + 1 >= framings_.size()) {
            throw Error(ErrorCode::InvalidArgument, "marked link index out of range");
        }
    }

    std::size_t size() const noexcept { return framings_.size(); }
    const std::vector<std::int64_t>& framings() const noexcept { return framings_; }
    const std::optional<MarkedLink>& marked_link() const noexcept { return marked_; }

    std::vector<std::int64_t> link_weights() const {
        std::vector<std::int64_t> links(framings_.size() - 1, 1);
        if (marked_) {
            links[marked_->index] = marked_->k;
        }
        return links;
    }

    friend bool operator==(const ChainDiagram&, const ChainDiagram&) = default;

private:
    std::vector<std::int64_t> framings_;
    std::optional<MarkedLink> marked_;
};

/// Builds framings a^[count] . b ... as a flat sequence.
inline std::vector<std::int64_t> repeat(std::int64_t value, std::size_t count) {
    return std::vector<std::int64_t>(count, value);
}

inline GramLattice chain_to_gram(const ChainDiagram& chain) {
    const std::size_t n = chain.size();
    IntMatrix m(n, n, 0);
    const auto links = chain.link_weights();
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = chain.framings()[i];
        if (i + 1 < n) {
            m(i, i + 1) = links[i];
            m(i + 1, i) = links[i];
        }
    }
    return GramLattice(std::move(m));
}

/// Replaces q . n . 0 .^(k) p by q .^(k) (p + n k^2) (or the mirrored
/// pattern p ^(k). 0 . n . q). The two removed components span a hyperbolic
/// summand [[n,1],[1,0]], so the determinant changes sign.
inline ChainDiagram twist_reduce(const ChainDiagram& chain) {
    const auto& marked = chain.marked_link();
    if (!marked) {
        throw Error(ErrorCode::PatternNotFound, "chain has no marked link");
    }
    const auto& f = chain.framings();
    const std::size_t m = marked->index;
    const std::int64_t k = marked->k;
    auto twisted = [&](std::int64_t p, std::int64_t n) {
        return checked::add(p, checked::mul(n, checked::mul(k, k)));
    };
    if (f[m] == 0 && m >= 1) {
        // ... q . n . 0 .^(k) p ...
        std::vector<std::int64_t> out(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(m - 1));
        out.push_back(twisted(f[m + 1], f[m - 1]));
        out.insert(out.end(), f.begin() + static_cast<std::ptrdiff_t>(m + 2), f.end());
        std::optional<MarkedLink> link;
        if (m >= 2) {
            link = MarkedLink{m - 2, k};
        }
        return ChainDiagram(std::move(out), link);
    }
    if (f[m + 1] == 0 && m + 2 < f.size()) {
        // ... p ^(k). 0 . n . q ...
        std::vector<std::int64_t> out(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(m));
        out.push_back(twisted(f[m], f[m + 2]));
        out.insert(out.end(), f.begin() + static_cast<std::ptrdiff_t>(m + 3), f.end());
        std::optional<MarkedLink> link;
        if (m + 1 < out.size()) {
            link = MarkedLink{m, k};
        }
        return ChainDiagram(std::move(out), link);
    }
    throw Error(ErrorCode::PatternNotFound, "no 0-framed component next to the marked link");
}

inline std::string to_string(const ChainDiagram& chain) {
    std::string out = "L(";
    const auto& f = chain.framings();
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += std::to_string(f[i]);
        if (i + 1 < f.size()) {
            if (chain.marked_link() && chain.marked_link()->index == i) {
                out += " .^(" + std::to_string(chain.marked_link()->k) + ") ";
            } else {
                out += " . ";
            }
        }
    }
    return out + ")";
}

}  // namespace plumbcalc
