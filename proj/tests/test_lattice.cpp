#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "plumbcalc/lattice.hpp"
#include "plumbcalc/plumbing.hpp"

using namespace plumbcalc;

namespace {

GramLattice e8_chain() { return chain_to_gram(ChainDiagram({2, 2, 2, 2, 2, 2, 4, 2}, MarkedLink{5, 2})); }

GramLattice random_symmetric(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> entry(-5, 5);
    IntMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m(i, j) = m(j, i) = entry(rng);
        }
    }
    return GramLattice(std::move(m));
}

IntMatrix transpose_times(const IntMatrix& b, const GramLattice& g) {
    return multiply(b.transposed(), multiply(g.gram(), b));
}

}  // namespace

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(GramLattice()), 1);
    EXPECT_EQ(determinant(oracle::minus_e8()), 1);
    EXPECT_EQ(determinant(e8_chain()), 1);
    EXPECT_EQ(determinant(GramLattice{{0, 1}, {1, 0}}), -1);
}

TEST(Determinant, LeadingMinorsOfE8Chain) {
    const GramLattice g = e8_chain();
    const std::vector<std::int64_t> expected{2, 3, 4, 5, 6, 7, 4, 1};
    for (std::size_t k = 1; k <= 8; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        EXPECT_EQ(determinant(g.restricted(idx)), expected[k - 1]);
    }
}

TEST(Determinant, AgreesWithCofactorOracle) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto g = random_symmetric(1 + t % 6, rng);
        EXPECT_EQ(determinant(g), oracle::cofactor_det(oracle::to_mat(g)));
    }
}

TEST(Signature, Examples) {
    EXPECT_EQ(signature(GramLattice::diagonal({-1, -1})), (Signature{0, 2, 0}));
    EXPECT_EQ(signature(oracle::minus_e8()), (Signature{0, 8, 0}));
    EXPECT_EQ(signature(oracle::minus_e8()).sigma(), -8);
    EXPECT_EQ(signature(GramLattice{{0, 1}, {1, 0}}), (Signature{1, 1, 0}));
    EXPECT_EQ(signature(GramLattice{{0, 0}, {0, 0}}), (Signature{0, 0, 2}));
}

TEST(Signature, AgreesWithCharacteristicPolynomialOracle) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 300; ++t) {
        const auto g = random_symmetric(1 + t % 6, rng);
        const auto expect = oracle::inertia(oracle::to_mat(g));
        const auto got = signature(g);
        EXPECT_EQ(got.n_plus, expect.plus);
        EXPECT_EQ(got.n_minus, expect.minus);
        EXPECT_EQ(got.n_zero, expect.zero);
    }
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(oracle::minus_e8()),
              (LatticeClass{Definiteness::NegativeDefinite, Parity::Even, Unimodularity::Unimodular}));
    EXPECT_EQ(classify(GramLattice::diagonal({1})),
              (LatticeClass{Definiteness::PositiveDefinite, Parity::Odd, Unimodularity::Unimodular}));
    EXPECT_EQ(classify(GramLattice{{0, 1}, {1, 0}}),
              (LatticeClass{Definiteness::Indefinite, Parity::Even, Unimodularity::Unimodular}));
}

TEST(ShortVectors, Examples) {
    EXPECT_EQ(short_vectors(GramLattice::diagonal({-1}), -1), (std::vector<std::vector<std::int64_t>>{{1}}));
    EXPECT_EQ(short_vectors(oracle::minus_e8(), -2).size(), 120u);
    EXPECT_TRUE(short_vectors(oracle::minus_e8(), -1).empty());
    try {
        short_vectors(GramLattice{{0, 1}, {1, 0}}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotDefinite);
    }
}

TEST(IsE8, Examples) {
    EXPECT_EQ(is_E8(oracle::minus_e8()), E8Type::MinusE8);
    EXPECT_EQ(is_E8(oracle::minus_e8().negated()), E8Type::PlusE8);
    EXPECT_EQ(is_E8(e8_chain()), E8Type::PlusE8);
    EXPECT_EQ(is_E8(chain_to_gram(ChainDiagram({2, 2, 2, 2, 4, 2, 2, 2}, MarkedLink{3, 2}))), E8Type::PlusE8);
    EXPECT_EQ(is_E8(chain_to_gram(ChainDiagram({2, 2, 2, 4, 2, 2, 2, 2}, MarkedLink{3, 2}))), E8Type::PlusE8);
    // -E7 plus <-2>
    const GramLattice e7 = graph_to_gram(star_graph(-2, {{-2}, {-2, -2}, {-2, -2, -2}}));
    EXPECT_EQ(is_E8(direct_sum(GramLattice::diagonal({-2}), e7)), E8Type::Neither);
    EXPECT_EQ(is_E8(GramLattice::diagonal(std::vector<std::int64_t>(8, -1))), E8Type::Neither);
}

TEST(Isometry, Examples) {
    const GramLattice e8 = oracle::minus_e8();
    IntMatrix perm(8, 8, 0);
    const std::vector<std::size_t> order{3, 7, 0, 5, 1, 6, 2, 4};
    for (std::size_t i = 0; i < 8; ++i) {
        perm(order[i], i) = 1;
    }
    const GramLattice permuted = e8.transformed(perm);
    auto m = isometric(e8, permuted);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(transpose_times(*m, permuted), e8.gram());
    EXPECT_FALSE(isometric(e8, GramLattice::diagonal(std::vector<std::int64_t>(8, -1))).has_value());

    const GramLattice chain = chain_to_gram(ChainDiagram({2, 2, 2, 2, 4, 2, 2, 2}, MarkedLink{3, 2}));
    auto c = isometric(chain, e8.negated());
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(transpose_times(*c, e8.negated()), chain.gram());
}

TEST(Isometry, RankGuard) {
    try {
        isometric(GramLattice::diagonal(std::vector<std::int64_t>(13, -1)),
                  GramLattice::diagonal(std::vector<std::int64_t>(13, -1)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankTooLarge);
    }
}

TEST(WuClass, Examples) {
    EXPECT_EQ(wu_class(oracle::minus_e8()).as_vector(), std::vector<std::int64_t>(8, 0));
    EXPECT_EQ(wu_class(GramLattice::diagonal({-1, -3})).as_vector(), (std::vector<std::int64_t>{1, 1}));
    try {
        wu_class(GramLattice::diagonal({-2, -3}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMod2);
    }
}

TEST(WuClass, RandomOddDeterminantTrees) {
    std::mt19937_64 rng(2024);
    std::size_t done = 0;
    while (done < 200) {
        const std::size_t n = 1 + rng() % 10;
        const PlumbingGraph g = oracle::random_plumbing(n, -6, 6, rng);
        const GramLattice gram = graph_to_gram(g);
        const BigInt det = oracle::cofactor_det(oracle::to_mat(gram));
        if (det % 2 == 0) {
            continue;
        }
        ++done;
        const auto w = wu_class(gram).as_vector();
        EXPECT_TRUE(is_characteristic(gram, w));
        // exhaustive: exactly one 0/1 solution
        std::size_t solutions = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::int64_t> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = (mask >> i) & 1;
            }
            if (is_characteristic(gram, v)) {
                ++solutions;
                EXPECT_EQ(v, w);
            }
        }
        EXPECT_EQ(solutions, 1u);
    }
}


TEST(MaxCharSquare, Examples) {
    const auto e8 = max_char_square(oracle::minus_e8());
    EXPECT_EQ(e8.square, 0);
    EXPECT_EQ(e8.coords, std::vector<Rational>(8, Rational(0)));
    for (std::int64_t k = 1; k <= 5; ++k) {
        EXPECT_EQ(max_char_square(GramLattice::diagonal(std::vector<std::int64_t>(k, -1))).square, -k);
    }
    const GramLattice s237 = graph_to_gram(negdef_plumbing(BrieskornTriple(2, 3, 7)));
    EXPECT_EQ(max_char_square(s237).square, -static_cast<std::int64_t>(s237.rank()));
}

TEST(MaxCharSquare, Errors) {
    try {
        max_char_square(GramLattice{{0, 1}, {1, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotNegativeDefinite);
    }
    try {
        max_char_square(GramLattice::diagonal({-2}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
    }
}

TEST(MaxCharSquare, OsBound) {
    EXPECT_TRUE(check_os_bound(oracle::minus_e8(), Rational(2)));
    EXPECT_TRUE(check_os_bound(GramLattice::diagonal({-1}), Rational(0)));
    EXPECT_FALSE(check_os_bound(oracle::minus_e8(), Rational(1)));
}

TEST(MaxCharSquare, UnimodularAgainstBoxes) {
    for (const auto& g : fixtures::unimodular_test_lattices()) {
        ASSERT_EQ(definiteness(g), Definiteness::NegativeDefinite);
        std::vector<std::int64_t> k0(g.rank());
        for (std::size_t i = 0; i < g.rank(); ++i) {
            k0[i] = g(i, i);
        }
        const auto box1 = oracle::box_max_char_square(g, k0, 1);
        const auto box3 = oracle::box_max_char_square(g, k0, 3);
        ASSERT_TRUE(box1 && box3);
        EXPECT_EQ(*box1, *box3) << to_string(g);
        EXPECT_EQ(max_char_square(g).square, *box3) << to_string(g);
        EXPECT_EQ(max_char_square(g, CharSearch::Enumeration).square, *box3) << to_string(g);
    }
}

// Every characteristic class of random negative-definite trees of rank <= 6.
TEST(MaxCharSquare, RandomTreesEveryClassAgainstBoxes) {
    std::mt19937_64 rng(99);
    std::size_t lattices = 0;
    while (lattices < 20) {
        const std::size_t n = 1 + rng() % 6;
        const PlumbingGraph graph = oracle::random_plumbing(n, -3, -1, rng);
        const GramLattice g = graph_to_gram(graph);
        if (definiteness(g) != Definiteness::NegativeDefinite) {
            continue;
        }
        const BigInt det = oracle::cofactor_det(oracle::to_mat(g));
        if (det > 40 || det < -40) {
            continue;
        }
        ++lattices;
        // classes: K0 = diag + 2 e_j-combinations within a small window
        std::vector<std::int64_t> k0(n);
        for (std::size_t i = 0; i < n; ++i) {
            k0[i] = g(i, i);
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::int64_t shift : {0, 2}) {
                auto k = k0;
                k[j] += shift;
                const auto box1 = oracle::box_max_char_square(g, k, 1);
                const auto box3 = oracle::box_max_char_square(g, k, 3);
                ASSERT_TRUE(box3.has_value());
                if (box1) {
                    EXPECT_EQ(*box1, *box3) << to_string(g);
                }
                EXPECT_EQ(max_char_square_in_class(g, k).square, *box3) << to_string(g);
                EXPECT_EQ(max_char_square_in_class(g, k, CharSearch::Enumeration).square, *box3) << to_string(g);
            }
        }
    }
}

TEST(MaxCharSquare, DynamicProgrammingMatchesEnumeration) {
    for (std::int64_t n = 0; n <= 6; ++n) {
        const PlumbingGraph g = negdef_plumbing(BrieskornTriple(2, 3, 12 * n + 5));
        const GramLattice gram = graph_to_gram(g);
        EXPECT_EQ(max_char_square(gram).square, max_char_square(gram, CharSearch::Enumeration).square);
    }
    for (const auto& t : {BrieskornTriple(2, 5, 9), BrieskornTriple(3, 4, 7), BrieskornTriple(2, 7, 11)}) {
        const GramLattice gram = graph_to_gram(negdef_plumbing(t));
        const auto dp = max_char_square(gram);
        EXPECT_EQ(dp.square, max_char_square(gram, CharSearch::Enumeration).square);
        std::vector<std::int64_t> c;
        for (const auto& x : dp.coords) {
            c.push_back(to_int64(x));
        }
        EXPECT_TRUE(is_characteristic(gram, c));
        EXPECT_EQ(Rational(gram.norm(c)), dp.square);
    }
}

TEST(Minimalize, Examples) {
    const auto a = minimalize(direct_sum(oracle::minus_e8(), GramLattice::diagonal({-1})));
    EXPECT_EQ(is_E8(a.minimal_part), E8Type::MinusE8);
    EXPECT_EQ(a.num_minus_ones, 1u);
    EXPECT_EQ(a.num_plus_ones, 0u);

    const auto b = minimalize(graph_to_gram(negdef_plumbing(BrieskornTriple(2, 3, 7))));
    EXPECT_EQ(b.minimal_part.rank(), 0u);
    EXPECT_EQ(b.num_minus_ones, 4u);

    const auto c = minimalize(GramLattice::diagonal({-1, -1, -1}));
    EXPECT_EQ(c.minimal_part.rank(), 0u);
    EXPECT_EQ(c.num_minus_ones, 3u);

    const auto d = minimalize(GramLattice::diagonal({1, 1}));
    EXPECT_EQ(d.num_plus_ones, 2u);
}


TEST(Minimalize, CertificateAndIdempotence) {
    for (const auto& g : fixtures::definite_test_lattices()) {
        const auto m = minimalize(g);
        EXPECT_EQ(transpose_times(m.basis_change, g), m.reassembled().gram()) << to_string(g);
        const BigInt det = oracle::cofactor_det(oracle::to_mat(m.basis_change));
        EXPECT_TRUE(det == 1 || det == -1);
        if (m.minimal_part.rank() > 0) {
            const auto again = minimalize(m.minimal_part);
            EXPECT_EQ(again.num_minus_ones + again.num_plus_ones, 0u);
            EXPECT_EQ(again.minimal_part.gram(), m.minimal_part.gram());
        }
    }
}

TEST(Minimalize, CancellationUnderRandomOrderings) {
    std::mt19937_64 rng(5);
    for (const auto& g : fixtures::definite_test_lattices()) {
        const auto reference = minimalize(g);
        for (int t = 0; t < 20; ++t) {
            const auto m = minimalize(g, [&](const auto& candidates) {
                return static_cast<std::size_t>(rng() % candidates.size());
            });
            EXPECT_EQ(m.num_minus_ones, reference.num_minus_ones);
            EXPECT_EQ(m.num_plus_ones, reference.num_plus_ones);
            EXPECT_EQ(transpose_times(m.basis_change, g), m.reassembled().gram());
            ASSERT_EQ(m.minimal_part.rank(), reference.minimal_part.rank());
            if (m.minimal_part.rank() > 0) {
                EXPECT_TRUE(isometric(m.minimal_part, reference.minimal_part).has_value());
            }
        }
    }
}

TEST(Minimalize, CharacteristicMaximumIsAdditive) {
    for (const auto& g : fixtures::unimodular_test_lattices()) {
        const auto m = minimalize(g);
        const Rational minimal = m.minimal_part.rank() == 0 ? Rational(0) : max_char_square(m.minimal_part).square;
        EXPECT_EQ(max_char_square(g).square, minimal - static_cast<std::int64_t>(m.num_minus_ones));
    }
}
