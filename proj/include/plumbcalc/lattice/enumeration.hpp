#pragma once

// Exact Fincke-Pohst enumeration for positive-definite integral forms.
//
// The form is factored as Q(z) = sum_i d_i (z_i + sum_{j>i} l_ji z_j)^2 and
// coordinates are fixed from the last index down. Within a level the
// candidates are visited in order of distance from the centre (Schnorr-Euchner
// zig-zag), so a side is abandoned as soon as one candidate leaves the ball.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/matrix.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

struct EnumerationLimits {
    std::uint64_t max_nodes = 2'000'000'000ULL;
};

class PositiveForm {
public:
    /// Throws NotDefinite unless gram is positive definite.
    explicit PositiveForm(const GramLattice& gram)
        : n_(gram.rank()), diag_(n_), lower_(n_, n_), coupled_(n_) {
        Matrix<Rational> a(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                a(i, j) = gram(i, j);
            }
        }
        for (std::size_t k = 0; k < n_; ++k) {
            if (a(k, k) <= 0) {
                throw Error(ErrorCode::NotDefinite, "form is not positive definite");
            }
            diag_[k] = a(k, k);
            for (std::size_t j = k + 1; j < n_; ++j) {
                lower_(j, k) = a(j, k) / diag_[k];
            }
            for (std::size_t i = k + 1; i < n_; ++i) {
                if (a(i, k) == 0) {
                    continue;
                }
                for (std::size_t j = k + 1; j < n_; ++j) {
                    if (a(k, j) != 0) {
                        a(i, j) -= lower_(i, k) * a(k, j);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (lower_(j, i) != 0) {
                    coupled_[i].push_back(j);
                }
            }
        }
    }

    std::size_t dim() const noexcept { return n_; }
    const std::vector<Rational>& pivots() const noexcept { return diag_; }

    /// Calls visit(y, Q(y - target)) for every integer vector y with
    /// Q(y - target) <= bound. The visitor may return a smaller bound, which
    /// takes effect immediately for the rest of the search.
    template <class Visitor>
    void enumerate(std::span<const Rational> target, Rational bound, Visitor&& visit,
                   EnumerationLimits limits = {}) const {
        State state{target, std::move(bound), std::vector<std::int64_t>(n_, 0),
                    std::vector<Rational>(n_), 0, limits};
        if (n_ == 0) {
            apply_bound(state, visit(std::span<const std::int64_t>(state.y), Rational(0)));
            return;
        }
        descend(state, n_ - 1, Rational(0), visit);
    }

private:
    struct State {
        std::span<const Rational> target;
        Rational bound;
        std::vector<std::int64_t> y;
        std::vector<Rational> offset;  // y_j - target_j for fixed coordinates
        std::uint64_t nodes;
        EnumerationLimits limits;
    };

    static void apply_bound(State& state, const std::optional<Rational>& next) {
        if (next && *next < state.bound) {
            state.bound = *next;
        }
    }

    template <class Visitor>
    void descend(State& state, std::size_t level, const Rational& partial, Visitor& visit) const {
        Rational centre = state.target[level];
        for (std::size_t j : coupled_[level]) {
            centre -= lower_(j, level) * state.offset[j];
        }
        const BigInt nearest = floor(centre + Rational(1, 2));
        const Rational& d = diag_[level];

        auto try_value = [&](const BigInt& candidate) -> bool {
            if (++state.nodes > state.limits.max_nodes) {
                throw Error(ErrorCode::SearchLimitExceeded, "lattice enumeration node budget exhausted");
            }
            const Rational delta = Rational(candidate) - centre;
            const Rational value = partial + d * delta * delta;
            if (value > state.bound) {
                return false;
            }
            state.y[level] = to_int64(candidate);
            state.offset[level] = Rational(candidate) - state.target[level];
            if (level == 0) {
                apply_bound(state, visit(std::span<const std::int64_t>(state.y), value));
            } else {
                descend(state, level - 1, value, visit);
            }
            return true;
        };

        if (!try_value(nearest)) {
            state.y[level] = 0;
            state.offset[level] = 0;
            return;
        }
        BigInt up = nearest + 1;
        BigInt down = nearest - 1;
        bool up_alive = true;
        bool down_alive = true;
        while (up_alive || down_alive) {
            bool take_down = false;
            if (up_alive && down_alive) {
                take_down = (centre - Rational(down)) <= (Rational(up) - centre);
            } else {
                take_down = down_alive;
            }
            if (take_down) {
                down_alive = try_value(down);
                --down;
            } else {
                up_alive = try_value(up);
                ++up;
            }
        }
        state.y[level] = 0;
        state.offset[level] = 0;
    }

    std::size_t n_;
    std::vector<Rational> diag_;
    Matrix<Rational> lower_;
    std::vector<std::vector<std::size_t>> coupled_;  // j > i with l_ji != 0
};

}  // namespace plumbcalc
