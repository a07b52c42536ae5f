#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "plumbcalc/continued_fraction.hpp"
#include "plumbcalc/error.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

struct SeifertBranch {
    std::int64_t a;
    std::int64_t b;

    friend auto operator<=>(const SeifertBranch&, const SeifertBranch&) = default;
};

/// S(e; (a1,b1), ..., (an,bn)) with euler number e - sum b_i/a_i.
class SeifertData {
public:
    SeifertData() = default;
    SeifertData(std::int64_t e, std::vector<SeifertBranch> branches) : e_(e), branches_(std::move(branches)) {
        for (const auto& br : branches_) {
            if (br.a < 1) {
                throw Error(ErrorCode::InvalidArgument, "branch multiplicity must be positive");
            }
            if (std::gcd(br.a, br.b) != 1) {
                throw Error(ErrorCode::NotCoprime, "branch (" + std::to_string(br.a) + "," +
                                                       std::to_string(br.b) + ") is not coprime");
            }
        }
    }

    std::int64_t e() const noexcept { return e_; }
    const std::vector<SeifertBranch>& branches() const noexcept { return branches_; }

    Rational euler_number() const {
        Rational out = e_;
        for (const auto& br : branches_) {
            out -= make_rational(br.b, br.a);
        }
        return out;
    }

    /// Canonical form: every branch has 0 < b < a (a = 1 branches are absorbed
    /// into e), branches sorted.
    SeifertData normalized() const {
        std::int64_t e = e_;
        std::vector<SeifertBranch> out;
        for (const auto& br : branches_) {
            if (br.a == 1) {
                e = checked::sub(e, br.b);
                continue;
            }
            const std::int64_t b = mod_floor(br.b, br.a);
            e = checked::sub(e, (br.b - b) / br.a);
            out.push_back({br.a, b});
        }
        std::sort(out.begin(), out.end());
        return SeifertData(e, std::move(out));
    }

    /// Orientation reversal, renormalized.
    SeifertData reversed() const {
        std::vector<SeifertBranch> neg;
        for (const auto& br : branches_) {
            neg.push_back({br.a, -br.b});
        }
        return SeifertData(-e_, std::move(neg)).normalized();
    }

    friend bool operator==(const SeifertData&, const SeifertData&) = default;

private:
    std::int64_t e_ = 0;
    std::vector<SeifertBranch> branches_;
};

inline std::string to_string(const SeifertData& s) {
    std::string out = "S(" + std::to_string(s.e()) + ";";
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
        out += (i == 0 ? "" : ",");
        out += "(" + std::to_string(s.branches()[i].a) + "," + std::to_string(s.branches()[i].b) + ")";
    }
    return out + ")";
}

/// Star-shaped plumbing: centre e, one leg per branch (a = 1 branches are
/// absorbed). Legs use the expansion of a/b in whichever sign mode applies.
inline PlumbingGraph seifert_to_plumbing(const SeifertData& s) {
    std::int64_t centre = s.e();
    std::vector<std::vector<std::int64_t>> legs;
    for (const auto& br : s.branches()) {
        if (br.a == 1) {
            centre = checked::sub(centre, br.b);
            continue;
        }
        const Rational value = make_rational(br.a, br.b == 0 ? 1 : br.b);
        if (br.b == 0 || (value <= 1 && value >= -1)) {
            throw Error(ErrorCode::NotExpandable, "branch (" + std::to_string(br.a) + "," +
                                                      std::to_string(br.b) + ") has |a/b| <= 1");
        }
        legs.push_back(cf_expand(value, value > 0 ? ExpandMode::AllAtLeast2 : ExpandMode::AllAtMostMinus2));
    }
    return star_graph(centre, legs);
}

/// Reads the Seifert invariants off a star-shaped tree: the centre is the
/// unique vertex of degree >= 3 (vertex 0 for a path), each leg gives
/// a/b = [w1, w2, ...] read from the centre outward. Not normalized.
inline SeifertData plumbing_to_seifert(const PlumbingGraph& graph) {
    std::size_t centre = 0;
    std::size_t high = 0;
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (graph.degree(v) > 2) {
            centre = v;
            ++high;
        }
    }
    if (high > 1) {
        throw Error(ErrorCode::NotStarShaped, std::to_string(high) + " vertices of degree > 2");
    }
    std::vector<SeifertBranch> branches;
    for (std::size_t start : graph.neighbors(centre)) {
        std::vector<std::int64_t> word;
        std::size_t prev = centre;
        std::size_t cur = start;
        while (true) {
            word.push_back(graph.weight(cur));
            std::size_t next = prev;
            for (std::size_t w : graph.neighbors(cur)) {
                if (w != prev) {
                    next = w;
                }
            }
            if (next == prev) {
                break;
            }
            prev = cur;
            cur = next;
        }
        const Rational value = cf_eval(word);
        if (value == 0) {
            throw Error(ErrorCode::ZeroTail, "leg evaluates to 0");
        }
        const BigInt num = numerator_of(value);
        const BigInt den = denominator_of(value);
        branches.push_back(num > 0 ? SeifertBranch{to_int64(num), to_int64(den)}
                                   : SeifertBranch{to_int64(BigInt(-num)), to_int64(BigInt(-den))});
    }
    return SeifertData(graph.weight(centre), std::move(branches));
}

enum class Orientation { Standard, Reversed };

class BrieskornTriple {
public:
    BrieskornTriple(std::int64_t p, std::int64_t q, std::int64_t r) : v_{p, q, r} {
        for (std::int64_t x : v_) {
            if (x < 2) {
                throw Error(ErrorCode::InvalidArgument, "Brieskorn exponents must be at least 2");
            }
        }
        if (!pairwise_coprime(v_)) {
            throw Error(ErrorCode::NotCoprime, "(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                                   std::to_string(r) + ") is not pairwise coprime");
        }
    }

    std::int64_t p() const noexcept { return v_[0]; }
    std::int64_t q() const noexcept { return v_[1]; }
    std::int64_t r() const noexcept { return v_[2]; }
    const std::array<std::int64_t, 3>& values() const noexcept { return v_; }

    BrieskornTriple sorted() const {
        auto s = v_;
        std::sort(s.begin(), s.end());
        return {s[0], s[1], s[2]};
    }

    friend bool operator==(const BrieskornTriple&, const BrieskornTriple&) = default;
    friend auto operator<=>(const BrieskornTriple&, const BrieskornTriple&) = default;

private:
    std::array<std::int64_t, 3> v_;
};

inline std::string to_string(const BrieskornTriple& t) {
    return "(" + std::to_string(t.p()) + "," + std::to_string(t.q()) + "," + std::to_string(t.r()) + ")";
}

/// Standard: euler number -1/pqr with 0 < p' < p etc.
inline SeifertData brieskorn_seifert(const BrieskornTriple& t, Orientation orientation = Orientation::Standard) {
    const auto& v = t.values();
    std::vector<SeifertBranch> branches;
    BigInt numerator = -1;
    BigInt product = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::int64_t others = checked::mul(v[(i + 1) % 3], v[(i + 2) % 3]);
        const std::int64_t inv = mod_inverse(others, v[i]);
        branches.push_back({v[i], inv});
        numerator += BigInt(inv) * others;
        product *= v[i];
    }
    const SeifertData standard(to_int64(BigInt(numerator / product)), std::move(branches));
    return orientation == Orientation::Standard ? standard.normalized() : standard.reversed();
}

}  // namespace plumbcalc
