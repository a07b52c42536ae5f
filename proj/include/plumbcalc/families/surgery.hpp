#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "plumbcalc/correction_terms.hpp"
#include "plumbcalc/error.hpp"
#include "plumbcalc/families/tables.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/seifert.hpp"

namespace plumbcalc {

struct SurgeryParameters {
    std::int64_t r, s;  // 0-surgery gives L(r, s)
    std::int64_t p, q;  // 1-surgery gives L(p, q)
    std::int64_t k, c;
    std::int64_t witness_i;          // ceil(p/2) - n
    std::int64_t literal_witness_i;  // floor((q+1)/2) - n, as tabulated

    SurgeryDescriptor descriptor() const { return {p, q, k, c}; }
};

/// Star S(1; [2], second, third) of families (i)-(iv), optionally with an
/// extra vertex of the given framing attached to the [2] leg (the surgery
/// on the meridian of the multiplicity-2 fibre).
inline PlumbingGraph surgery_presentation(FamilyId id, std::int64_t n, std::optional<std::int64_t> framing = {}) {
    if (!has_surgery_table(id)) {
        throw Error(ErrorCode::InvalidArgument, "family " + std::string(to_string(id)) + " has no surgery table");
    }
    const auto& t = detail::surgery_tables()[index_of(id)];
    std::vector<std::vector<std::int64_t>> legs{{2}, t.second_leg(n), t.third_leg(n)};
    if (!framing) {
        return star_graph(1, legs);
    }
    legs[0].push_back(*framing);
    return star_graph(1, legs);
}

inline SurgeryParameters surgery_parameters(FamilyId id, std::int64_t n) {
    detail::require_positive(n);
    if (!has_surgery_table(id)) {
        throw Error(ErrorCode::InvalidArgument, "family " + std::string(to_string(id)) + " has no surgery table");
    }
    const auto& t = detail::surgery_tables()[index_of(id)];
    SurgeryParameters sp{};
    sp.r = t.r(n);
    sp.s = t.s(n);
    sp.p = t.p(n);
    sp.q = t.q(n);
    sp.k = t.k(n);
    const std::string where = "family " + std::string(to_string(id)) + ", n = " + std::to_string(n) + ": ";
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) {
            throw Error(ErrorCode::TableInvariantViolated, where + what);
        }
    };
    require(sp.p == sp.r + 1, "p != r + 1");
    require(std::gcd(sp.p, sp.q) == 1, "gcd(p, q) != 1");
    require(std::gcd(sp.r, sp.s) == 1, "gcd(r, s) != 1");
    require(std::gcd(sp.k, sp.p) == 1, "gcd(k, p) != 1");
    const SurgeryDescriptor desc = SurgeryDescriptor::make(sp.p, sp.q, sp.k);
    sp.c = desc.c;
    sp.witness_i = (sp.p + 1) / 2 - n;
    sp.literal_witness_i = (sp.q + 1) / 2 - n;

    // Determinant-level check: the presentation bounds the homology sphere,
    // and the two surgeries have |H_1| = r and p.
    const auto base = surgery_presentation(id, n);
    require(plumbing_to_seifert(base).normalized() == brieskorn_seifert(family_triple(id, n)),
            "surgery presentation does not match the standard Seifert data");
    auto abs_det = [](const PlumbingGraph& g) {
        const BigInt d = determinant(graph_to_gram(g));
        return d < 0 ? BigInt(-d) : d;
    };
    require(abs_det(base) == 1, "surgery presentation is not a homology sphere");
    require(abs_det(surgery_presentation(id, n, 0)) == sp.r, "|H_1| of the 0-surgery is not r");
    require(abs_det(surgery_presentation(id, n, 1)) == sp.p, "|H_1| of the 1-surgery is not p");
    return sp;
}

}  // namespace plumbcalc
