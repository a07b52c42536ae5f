#pragma once

#include <cstdint>
#include <span>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/characteristic.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/seifert.hpp"

namespace plumbcalc {

/// Negative-definite star plumbing bounding the standard Sigma(p,q,r). Each
/// branch (a,b) of the standard data becomes a leg expanding a/(b-a) < -1.
inline PlumbingGraph negdef_plumbing(const BrieskornTriple& t) {
    const SeifertData s = brieskorn_seifert(t, Orientation::Standard);
    std::vector<std::vector<std::int64_t>> legs;
    for (const auto& br : s.branches()) {
        legs.push_back(cf_expand(make_rational(br.a, br.b - br.a), ExpandMode::AllAtMostMinus2));
    }
    PlumbingGraph graph =
        star_graph(checked::sub(s.e(), static_cast<std::int64_t>(s.branches().size())), legs);
    const GramLattice gram = graph_to_gram(graph);
    if (definiteness(gram) != Definiteness::NegativeDefinite) {
        throw Error(ErrorCode::NotNegativeDefinite, "plumbing for " + to_string(t) + " is not negative definite");
    }
    const BigInt det = determinant(gram);
    if (det != 1 && det != -1) {
        throw Error(ErrorCode::NotUnimodular, "plumbing for " + to_string(t) + " has determinant " + to_string(det));
    }
    return graph;
}

inline Rational mubar(const GramLattice& gram) {
    const WuClass w = wu_class(gram);
    const auto wv = w.as_vector();
    return Rational(signature(gram).sigma() - gram.norm(wv), 8);
}

/// (sigma - w^2)/8 for the Wu class w of the plumbing.
inline Rational mubar(const PlumbingGraph& graph) { return mubar(graph_to_gram(graph)); }

/// mubar mod 2.
inline int rohlin(const PlumbingGraph& graph) {
    const Rational m = mubar(graph);
    if (!is_integer(m)) {
        throw Error(ErrorCode::InvalidArgument, "mubar " + to_string(m) + " is not an integer");
    }
    return static_cast<int>(mod_floor(to_int64(m), 2));
}

struct UeSpinBound {
    std::int64_t max_b2;            // max(0, -8 mubar)
    std::int64_t congruence_class;  // -8 mubar mod 16
    bool positive_b2_excluded;      // -8 mubar <= 0
    std::int64_t raw;               // -8 mubar
};

/// Bound on b2 of a negative-definite spin filling of a Seifert homology
/// sphere, from b2 <= -8 mubar and b2 = -8 mubar mod 16.
inline UeSpinBound ue_spin_bound(const PlumbingGraph& graph) {
    const GramLattice gram = graph_to_gram(graph);
    plumbing_to_seifert(graph);  // star-shaped check
    const BigInt det = determinant(gram);
    if (det != 1 && det != -1) {
        throw Error(ErrorCode::NotUnimodular, "boundary is not a homology sphere");
    }
    const Rational m = mubar(gram);
    const std::int64_t raw = -8 * to_int64(m);
    return {std::max<std::int64_t>(0, raw), mod_floor(raw, 16), raw <= 0, raw};
}

}  // namespace plumbcalc
