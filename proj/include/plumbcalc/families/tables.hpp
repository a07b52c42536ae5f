#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/plumbing/chain.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/seifert.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

enum class FamilyId { I = 1, II, III, IV, V, VI, VII, VIII, IX, X, XI, XII };

inline constexpr std::array<FamilyId, 12> kAllFamilies{
    FamilyId::I,   FamilyId::II,   FamilyId::III, FamilyId::IV, FamilyId::V,  FamilyId::VI,
    FamilyId::VII, FamilyId::VIII, FamilyId::IX,  FamilyId::X,  FamilyId::XI, FamilyId::XII};

inline constexpr std::array<std::string_view, 12> kFamilyNames{"i",   "ii",   "iii", "iv", "v",  "vi",
                                                               "vii", "viii", "ix",  "x",  "xi", "xii"};

constexpr std::size_t index_of(FamilyId id) { return static_cast<std::size_t>(id) - 1; }

constexpr std::string_view to_string(FamilyId id) { return kFamilyNames[index_of(id)]; }

inline FamilyId parse_family(std::string_view text) {
    for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
        if (kFamilyNames[i] == text) {
            return kAllFamilies[i];
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(text) + "'");
}

/// "i..xii", "i,iii,v" or a mix such as "i..iv,vii".
inline std::vector<FamilyId> parse_family_list(std::string_view text) {
    std::vector<FamilyId> out;
    while (!text.empty()) {
        const std::size_t comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_family(item));
        } else {
            const std::size_t lo = index_of(parse_family(item.substr(0, dots)));
            const std::size_t hi = index_of(parse_family(item.substr(dots + 2)));
            if (lo > hi) {
                throw Error(ErrorCode::InvalidArgument, "empty family range '" + std::string(item) + "'");
            }
            for (std::size_t i = lo; i <= hi; ++i) {
                out.push_back(kAllFamilies[i]);
            }
        }
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    return out;
}

inline bool has_surgery_table(FamilyId id) { return index_of(id) < 4; }

namespace detail {

struct Linear {
    std::int64_t a;
    std::int64_t b;
    std::int64_t operator()(std::int64_t n) const { return checked::add(checked::mul(a, n), b); }
};

struct Quadratic {
    std::int64_t a;
    std::int64_t b;
    std::int64_t c;
    std::int64_t operator()(std::int64_t n) const {
        return checked::add(checked::add(checked::mul(a, checked::mul(n, n)), checked::mul(b, n)), c);
    }
};

struct FamilyTable {
    // Triple (first, second(n), third(n)).
    std::int64_t first;
    Linear second;
    Linear third;
    // Seifert row S(1; (p1,1), (p2,q2), (p3,q3)).
    std::int64_t p1;
    Linear p2, q2, p3, q3;
};

inline constexpr std::array<FamilyTable, 12> kTables{{
    {2, {8, -3}, {14, -5}, 2, {14, -5}, {7, -6}, {8, -3}, {0, 2}},
    {2, {14, 3}, {24, 5}, 2, {14, 3}, {7, -2}, {24, 5}, {0, 6}},
    {2, {16, 3}, {26, 5}, 2, {26, 5}, {13, -4}, {16, 3}, {0, 4}},
    {2, {10, -3}, {16, -5}, 2, {10, -3}, {5, -4}, {16, -5}, {0, 4}},
    {5, {35, -2}, {50, -3}, 5, {35, -2}, {28, -3}, {50, -3}, {0, 2}},
    {5, {25, -2}, {40, -3}, 5, {40, -3}, {32, -4}, {25, -2}, {0, 1}},
    {3, {15, -2}, {36, -5}, 3, {15, -2}, {10, -3}, {36, -5}, {0, 4}},
    {3, {9, -2}, {24, -5}, 3, {24, -5}, {16, -6}, {9, -2}, {0, 1}},
    {3, {21, -4}, {36, -7}, 3, {21, -4}, {14, -5}, {36, -7}, {0, 4}},
    {3, {27, -4}, {48, -7}, 3, {48, -7}, {32, -10}, {27, -4}, {0, 3}},
    {4, {28, -3}, {64, -7}, 4, {28, -3}, {21, -4}, {64, -7}, {0, 4}},
    {4, {32, -3}, {76, -7}, 4, {76, -7}, {57, -10}, {32, -3}, {0, 2}},
}};

struct SurgeryTable {
    Quadratic r, s, p, q;
    Linear k;
    // Legs of the presentation S(1; [2], second, third) used for the surgeries.
    std::vector<std::int64_t> (*second_leg)(std::int64_t);
    std::vector<std::int64_t> (*third_leg)(std::int64_t);
};

inline const std::array<SurgeryTable, 4>& surgery_tables() {
    static const std::array<SurgeryTable, 4> tables{{
        {{56, -41, 7}, {8, -7, 2}, {56, -41, 8}, {8, -7, 1}, {14, -5},
         [](std::int64_t n) { return std::vector<std::int64_t>{2, 1 - n, 7}; },
         [](std::int64_t n) { return std::vector<std::int64_t>{4 * n - 1, 2}; }},
        {{168, 71, 7}, {72, 27, 4}, {168, 71, 8}, {72, 27, 1}, {14, 3},
         [](std::int64_t n) { return std::vector<std::int64_t>{2, -n, -3, 2}; },
         [](std::int64_t n) { return std::vector<std::int64_t>{4 * n + 1, 6}; }},
        {{208, 79, 7}, {48, 17, 2}, {208, 79, 8}, {48, 17, 1}, {26, 5},
         [](std::int64_t n) { return std::vector<std::int64_t>{2, -n, -3, 4}; },
         [](std::int64_t n) { return std::vector<std::int64_t>{4 * n + 1, 4}; }},
        {{80, -49, 7}, {16, -13, 4}, {80, -49, 8}, {16, -13, 1}, {10, -3},
         [](std::int64_t n) { return std::vector<std::int64_t>{2, 1 - n, 5}; },
         [](std::int64_t n) { return std::vector<std::int64_t>{4 * n - 1, 4}; }},
    }};
    return tables;
}

inline void require_positive(std::int64_t n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "family index n must be positive");
    }
}

}  // namespace detail

/// Sigma(|p|,|q|,|r|) of the family; n may be any integer, but the triple
/// must be pairwise coprime with entries >= 2.
inline BrieskornTriple family_triple(FamilyId id, std::int64_t n) {
    const auto& t = detail::kTables[index_of(id)];
    const std::int64_t q = t.second(n);
    const std::int64_t r = t.third(n);
    return BrieskornTriple(t.first, q < 0 ? -q : q, r < 0 ? -r : r);
}

/// The tabulated Seifert row S(1; (p1,1), (p2,q2), (p3,q3)), unnormalized.
inline SeifertData family_seifert(FamilyId id, std::int64_t n) {
    detail::require_positive(n);
    const auto& t = detail::kTables[index_of(id)];
    return SeifertData(1, {{t.p1, 1}, {t.p2(n), t.q2(n)}, {t.p3(n), t.q3(n)}});
}

/// For (i) only: the row with (8n-3, 2) replaced by (8n-3, 3).
inline SeifertData corrupted_family_seifert(std::int64_t n) {
    detail::require_positive(n);
    const auto& t = detail::kTables[0];
    return SeifertData(1, {{t.p1, 1}, {t.p2(n), t.q2(n)}, {t.p3(n), 3}});
}

/// Linear diagrams before the twist reduction, families (i)-(iv).
inline ChainDiagram family_chain(FamilyId id, std::int64_t n) {
    detail::require_positive(n);
    auto join = [](std::initializer_list<std::vector<std::int64_t>> parts) {
        std::vector<std::int64_t> out;
        for (const auto& part : parts) {
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    };
    switch (id) {
        case FamilyId::I:  // 2^[6] . n . 0 .^(2) (4-4n) . 2
            return ChainDiagram(join({repeat(2, 6), {n, 0, 4 - 4 * n, 2}}), MarkedLink{7, 2});
        case FamilyId::II:  // 2^[5] . (2-4n) .^(2) 0 . n . 4 . 2
            return ChainDiagram(join({repeat(2, 5), {2 - 4 * n, 0, n, 4, 2}}), MarkedLink{5, 2});
        case FamilyId::III:  // 2^[3] . 4 . n . 0 .^(2) (2-4n) . 2^[3]
            return ChainDiagram(join({repeat(2, 3), {4, n, 0, 2 - 4 * n}, repeat(2, 3)}), MarkedLink{5, 2});
        case FamilyId::IV:  // 2^[4] . n . 0 .^(2) (4-4n) . 2^[3]
            return ChainDiagram(join({repeat(2, 4), {n, 0, 4 - 4 * n}, repeat(2, 3)}), MarkedLink{5, 2});
        default:
            throw Error(ErrorCode::InvalidArgument, "family " + std::string(to_string(id)) + " has no chain diagram");
    }
}

/// S(2; (3,2), (4,3), (7,4)), the positive-definite E8 plumbing of -Sigma(3,4,7).
inline SeifertData sigma347_reversed_data() { return SeifertData(2, {{3, 2}, {4, 3}, {7, 4}}); }

/// The star with centre 2 and legs 2^[2], 2^[4], 2.4 as literally tabulated
/// for the endpoint of families (v)-(xii).
inline PlumbingGraph literal_sigma347_plumbing() { return star_graph(2, {{2, 2}, {2, 2, 2, 2}, {2, 4}}); }

inline GramLattice family_final_lattice(FamilyId id, std::int64_t n) {
    if (has_surgery_table(id)) {
        return chain_to_gram(twist_reduce(family_chain(id, n)));
    }
    detail::require_positive(n);
    return graph_to_gram(seifert_to_plumbing(sigma347_reversed_data()));
}

}  // namespace plumbcalc
