#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/matrix.hpp"

namespace plumbcalc {

/// An integral lattice given by its Gram matrix in a fixed basis. The rank 0
/// lattice is valid and behaves as the empty direct summand.
class GramLattice {
public:
    GramLattice() = default;

    explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) {
            throw Error(ErrorCode::InvalidArgument, "Gram matrix must be square");
        }
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = i + 1; j < rank(); ++j) {
                if (gram_(i, j) != gram_(j, i)) {
                    throw Error(ErrorCode::InvalidArgument,
                                "Gram matrix is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
                }
            }
        }
    }

    GramLattice(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : GramLattice(IntMatrix(rows)) {}

    static GramLattice diagonal(std::span<const std::int64_t> entries) {
        IntMatrix m(entries.size(), entries.size(), 0);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            m(i, i) = entries[i];
        }
        return GramLattice(std::move(m));
    }

    static GramLattice diagonal(std::initializer_list<std::int64_t> entries) {
        return diagonal(std::span<const std::int64_t>(entries.begin(), entries.size()));
    }

    std::size_t rank() const noexcept { return gram_.rows(); }
    const IntMatrix& gram() const noexcept { return gram_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

    std::int64_t pairing(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
        return dot(x, apply(y));
    }

    std::int64_t norm(std::span<const std::int64_t> x) const { return pairing(x, x); }

    /// Gram * x, i.e. the vector of pairings (x, [v]).
    std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const {
        std::vector<std::int64_t> out(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < rank(); ++j) {
                if (gram_(i, j) != 0 && x[j] != 0) {
                    s = checked::add(s, checked::mul(gram_(i, j), x[j]));
                }
            }
            out[i] = s;
        }
        return out;
    }

    GramLattice negated() const {
        IntMatrix m = gram_;
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j) {
                m(i, j) = -m(i, j);
            }
        }
        return GramLattice(std::move(m));
    }

    /// Gram matrix of the vectors given by the columns of basis.
    GramLattice transformed(const IntMatrix& basis) const {
        return GramLattice(multiply(multiply(basis.transposed(), gram_), basis));
    }

    /// Sublattice spanned by a subset of basis vectors.
    GramLattice restricted(std::span<const std::size_t> indices) const {
        IntMatrix m(indices.size(), indices.size(), 0);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            for (std::size_t j = 0; j < indices.size(); ++j) {
                m(i, j) = gram_(indices[i], indices[j]);
            }
        }
        return GramLattice(std::move(m));
    }

    bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i) {
            if (gram_(i, i) % 2 != 0) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const GramLattice&, const GramLattice&) = default;

private:
    IntMatrix gram_;
};

inline GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
    const std::size_t n = a.rank() + b.rank();
    IntMatrix m(n, n, 0);
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) {
            m(i, j) = a(i, j);
        }
    }
    for (std::size_t i = 0; i < b.rank(); ++i) {
        for (std::size_t j = 0; j < b.rank(); ++j) {
            m(a.rank() + i, a.rank() + j) = b(i, j);
        }
    }
    return GramLattice(std::move(m));
}

inline std::string to_string(const GramLattice& lattice) {
    std::string out = "[";
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        out += i == 0 ? "[" : ",[";
        for (std::size_t j = 0; j < lattice.rank(); ++j) {
            if (j > 0) {
                out += ",";
            }
            out += std::to_string(lattice(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace plumbcalc
