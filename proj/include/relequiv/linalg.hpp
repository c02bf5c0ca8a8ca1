#pragma once

// Exact row-echelon spans over Q(zeta_N), used for rank, nullity and
// membership tests on homogeneous polynomials and maps.

#include <cstddef>
#include <map>
#include <utility>

#include "relequiv/polynomial.hpp"

namespace relequiv {

using SparseVector = std::map<std::size_t, Cyclotomic>;

/// Assigns stable column numbers to (coordinate, monomial) pairs on first use.
class CoordinateIndex {
   public:
    std::size_t operator()(std::size_t component, const Exponents& e) {
        auto [it, inserted] = index_.try_emplace({component, e}, index_.size());
        return it->second;
    }
    std::size_t size() const noexcept { return index_.size(); }

   private:
    std::map<std::pair<std::size_t, Exponents>, std::size_t> index_;
};

inline SparseVector to_vector(const Poly& p, CoordinateIndex& index) {
    SparseVector v;
    for (const auto& [e, c] : p.terms()) v.emplace(index(0, e), c);
    return v;
}

inline SparseVector to_vector(const PolyMap& g, CoordinateIndex& index) {
    SparseVector v;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (const auto& [e, c] : g[i].terms()) v.emplace(index(i, e), c);
    return v;
}

/// Incrementally built row-echelon basis. Each stored row has pivot 1 at its
/// smallest column.
class EchelonBasis {
   public:
    /// Reduces v against the stored rows; v ends up zero iff it was in the span.
    void reduce(SparseVector& v) const {
        auto it = v.begin();
        while (it != v.end()) {
            const std::size_t col = it->first;
            auto row = rows_.find(col);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            const Cyclotomic factor = it->second;
            for (const auto& [c, x] : row->second) {
                auto [pos, inserted] = v.try_emplace(c, Cyclotomic());
                pos->second -= factor * x;
                if (pos->second.is_zero() && c != col) v.erase(pos);
            }
            it = v.erase(v.find(col));
            it = v.upper_bound(col);
        }
    }

    bool contains(SparseVector v) const {
        reduce(v);
        return v.empty();
    }

    /// Adds v to the span. Returns false if v was already in it.
    bool insert(SparseVector v) {
        reduce(v);
        if (v.empty()) return false;
        const std::size_t pivot = v.begin()->first;
        const Cyclotomic inv = v.begin()->second.inverse();
        for (auto& [c, x] : v) x *= inv;
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

   private:
    std::map<std::size_t, SparseVector> rows_;
};

}  // namespace relequiv
