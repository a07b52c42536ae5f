#pragma once

#include <vector>

#include "oracles.hpp"
#include "plumbcalc/lattice.hpp"
#include "plumbcalc/plumbing.hpp"

namespace fixtures {

using namespace plumbcalc;

inline std::vector<GramLattice> unimodular_test_lattices() {
    std::vector<GramLattice> out{
        GramLattice::diagonal({-1}),
        GramLattice::diagonal({-1, -1, -1}),
        graph_to_gram(negdef_plumbing(BrieskornTriple(2, 3, 7))),
        graph_to_gram(star_graph(-1, {{-2}, {-3}, {-7}})),
        direct_sum(GramLattice::diagonal({-1}), graph_to_gram(star_graph(-1, {{-2}, {-3}, {-7}}))),
        chain_to_gram(ChainDiagram({-2, -1, -3})),
        chain_to_gram(ChainDiagram({-2, -2, -1, -4})),
    };
    return out;
}

inline std::vector<GramLattice> definite_test_lattices() {
    // E8 + <-1>^2 in a mixed basis, a plumbing with unit vectors, and more
    IntMatrix mix = IntMatrix::identity(10);
    mix(0, 8) = 1;
    mix(3, 9) = -1;
    mix(8, 9) = 1;
    return {
        direct_sum(oracle::minus_e8(), GramLattice::diagonal({-1, -1})).transformed(mix),
        graph_to_gram(negdef_plumbing(BrieskornTriple(2, 3, 7))),
        graph_to_gram(star_graph(-1, {{-2}, {-3}, {-7}})),
        direct_sum(GramLattice::diagonal({-1}), graph_to_gram(star_graph(-2, {{-2}, {-2}, {-3}}))),
        GramLattice{{-2, 1, 0}, {1, -2, 1}, {0, 1, -1}},
        oracle::minus_e8().negated(),
    };
}

}  // namespace fixtures
