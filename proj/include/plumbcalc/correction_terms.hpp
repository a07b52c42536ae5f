#pragma once

// Heegaard Floer correction terms.
//
// Lens spaces: Euclidean descent
//     d(p, q, i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(q, p mod q, i mod q)
// with d(1, 0, 0) = 0, and an independent plumbing oracle. Seifert homology
// spheres: maximal characteristic square of a negative-definite star
// plumbing. Surgeries: maximum of d(p,q,k i + c) - d(p,1,i) over labels.

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "plumbcalc/continued_fraction.hpp"
#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/characteristic.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/seifert.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

inline constexpr std::size_t kDefaultRankGuard = 40;

/// Raw descent formula, labels 0 <= i < p + q. Results are memoized per thread.
inline Rational correction_term_recursion(std::int64_t p, std::int64_t q, std::int64_t i) {
    if (p == 1) {
        return 0;
    }
    if (p < 1 || q < 1 || q >= p) {
        throw Error(ErrorCode::InvalidArgument, "recursion needs 0 < q < p");
    }
    thread_local std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Rational> memo;
    const auto key = std::make_tuple(p, q, i);
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    const BigInt pq = BigInt(p) * q;
    const BigInt s = BigInt(2) * i + 1 - p - q;
    Rational value = make_rational(s * s - pq, 4 * pq);
    if (q > 1) {
        value -= correction_term_recursion(q, p % q, i % q);
    }
    memo.emplace(key, value);
    return value;
}

struct LensSpace {
    std::int64_t p;
    std::int64_t q;

    LensSpace(std::int64_t p_, std::int64_t q_) : p(p_), q(p_ == 1 ? 0 : mod_floor(q_, p_)) {
        if (p < 1) {
            throw Error(ErrorCode::InvalidArgument, "lens space needs p >= 1");
        }
        if (p > 1 && std::gcd(p, q) != 1) {
            throw Error(ErrorCode::NotCoprime, "L(" + std::to_string(p_) + "," + std::to_string(q_) + ")");
        }
    }
};

/// d(L(p,q), i) for labels i in Z/p. Labels follow the surgery
/// identification, which is the descent formula applied to (p, q^-1 mod p).
inline Rational lens_d(const LensSpace& lens, std::int64_t i) {
    if (lens.p == 1) {
        return 0;
    }
    const std::int64_t label = mod_floor(i, lens.p);
    return correction_term_recursion(lens.p, mod_inverse(lens.q, lens.p), label);
}

inline std::vector<Rational> lens_d_all(const LensSpace& lens) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(lens.p));
    for (std::int64_t i = 0; i < lens.p; ++i) {
        out.push_back(lens_d(lens, i));
    }
    return out;
}

/// The negative-definite chain -[a1,...,an] with p/q = [a1,...,an] bounds
/// -L(p,q); one characteristic class m + 2j e_1 per j < p, each maximized
/// exactly, and d(L(p,q)) = -d(-L(p,q)). Independent of the descent formula.
inline std::vector<Rational> lens_d_oracle(const LensSpace& lens) {
    if (lens.p == 1) {
        return {Rational(0)};
    }
    const CFWord word = cf_expand(make_rational(lens.p, lens.q), ExpandMode::AllAtLeast2);
    const std::size_t n = word.size();
    IntMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = -word[i];
        if (i + 1 < n) {
            m(i, i + 1) = m(i + 1, i) = 1;
        }
    }
    const GramLattice gram(std::move(m));
    const CharacteristicMaximizer maximizer(gram);
    std::vector<std::int64_t> diag(n);
    std::vector<std::int64_t> e1(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = gram(i, i);
    }
    e1[0] = 1;
    const auto base = solve_rational(gram, diag);
    const auto step = solve_rational(gram, e1);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(lens.p));
    std::vector<Rational> c0(n);
    for (std::int64_t j = 0; j < lens.p; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            c0[i] = base[i] + 2 * j * step[i];
        }
        const auto best = maximizer.maximize(c0);
        out.push_back(-(best.square + static_cast<std::int64_t>(n)) / 4);
    }
    return out;
}

struct PlumbingD {
    Rational d;
    Rational max_square;
    std::size_t rank;
    std::vector<std::int64_t> certificate;  // maximizing characteristic vector
};

/// d = (max c^2 + rank)/4 for a negative-definite unimodular star plumbing.
inline PlumbingD d_plumbing(const PlumbingGraph& graph, std::size_t rank_guard = kDefaultRankGuard) {
    if (graph.size() > rank_guard) {
        throw Error(ErrorCode::RankGuardExceeded, "plumbing rank " + std::to_string(graph.size()) +
                                                      " exceeds guard " + std::to_string(rank_guard));
    }
    plumbing_to_seifert(graph);  // star-shaped check
    const GramLattice gram = graph_to_gram(graph);
    const auto best = max_char_square(gram);
    PlumbingD out{(best.square + static_cast<std::int64_t>(gram.rank())) / 4, best.square, gram.rank(), {}};
    for (const auto& c : best.coords) {
        out.certificate.push_back(to_int64(c));
    }
    return out;
}

struct SurgeryDescriptor {
    std::int64_t p;
    std::int64_t q;
    std::int64_t k;
    std::int64_t c;

    /// c = (k + 1 + p)(k - 1)/2 reduced mod p.
    static SurgeryDescriptor make(std::int64_t p, std::int64_t q, std::int64_t k) {
        if (p < 2) {
            throw Error(ErrorCode::InvalidArgument, "surgery slope must be at least 2");
        }
        if (std::gcd(k, p) != 1) {
            throw Error(ErrorCode::NotCoprime, "dual class k is not a unit mod p");
        }
        const BigInt twice_c = (BigInt(k) + 1 + p) * (BigInt(k) - 1);
        if (twice_c % 2 != 0) {
            throw Error(ErrorCode::InvalidArgument, "(k+1+p)(k-1) is odd");
        }
        const BigInt c = twice_c / 2 % p;
        return {p, mod_floor(q, p), mod_floor(k, p), mod_floor(to_int64(c), p)};
    }

    std::int64_t label(std::int64_t i) const {
        return mod_floor(to_int64(BigInt(k) * i + c), p);
    }
};

struct SurgeryD {
    Rational d;
    std::int64_t argmax;
};

inline Rational surgery_term(const SurgeryDescriptor& desc, std::int64_t i) {
    return lens_d({desc.p, desc.q}, desc.label(i)) - lens_d({desc.p, 1}, i);
}

/// max over 0 <= i < p of d(p,q,k i + c) - d(p,1,i); the smallest maximizing i.
inline SurgeryD d_surgery(const SurgeryDescriptor& desc) {
    SurgeryD out{surgery_term(desc, 0), 0};
    for (std::int64_t i = 1; i < desc.p; ++i) {
        Rational value = surgery_term(desc, i);
        if (value > out.d) {
            out = {std::move(value), i};
        }
    }
    return out;
}

}  // namespace plumbcalc
