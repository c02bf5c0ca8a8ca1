#pragma once

// Finite matrix groups carrying a source representation rho, a target
// representation eta and a grading sigma onto Z_m.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relequiv/matrix.hpp"

namespace relequiv {

/// One generator as supplied by the user. An empty eta means "same as rho".
struct GeneratorInput {
    Matrix rho;
    Matrix eta;
    int sigma = 0;
};

struct GroupElement {
    Matrix rho;
    Matrix eta;
    int sigma = 0;
    std::size_t index = 0;
};

enum class Side { source, target };

class GradedGroup;
GradedGroup close_group(std::span<const GeneratorInput> generators, int m, std::size_t max_order);

class GradedGroup {
   public:
    int modulus() const noexcept { return m_; }
    std::size_t order() const noexcept { return elements_.size(); }
    std::size_t source_dim() const noexcept { return n_; }
    std::size_t target_dim() const noexcept { return target_n_; }
    /// lcm of the input conductors and of m; all matrices live in Q(zeta_conductor).
    int conductor() const noexcept { return conductor_; }

    const std::vector<GroupElement>& elements() const noexcept { return elements_; }
    const GroupElement& element(std::size_t i) const { return elements_.at(i); }
    std::size_t identity() const noexcept { return 0; }

    /// Indices of K = ker sigma, in closure order.
    const std::vector<std::size_t>& kernel() const noexcept { return kernel_; }
    /// Index of delta, the chosen element with sigma = 1.
    std::size_t delta() const noexcept { return delta_; }
    /// Element indices of the user generators, in input order.
    const std::vector<std::size_t>& generators() const noexcept { return generators_; }

    std::optional<std::size_t> find(const Matrix& rho, const Matrix& eta) const {
        auto it = lookup_.find(key(rho, eta));
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t multiply(std::size_t a, std::size_t b) const {
        const auto& x = elements_.at(a);
        const auto& y = elements_.at(b);
        auto idx = find(x.rho * y.rho, x.eta * y.eta);
        if (!idx) throw InconsistencyError("group is not closed under multiplication");
        return *idx;
    }

    std::size_t inverse(std::size_t a) const { return inverses_.at(a); }

    std::size_t power(std::size_t a, long k) const {
        if (k < 0) return power(inverse(a), -k);
        std::size_t r = identity();
        for (long i = 0; i < k; ++i) r = multiply(r, a);
        return r;
    }

    /// sigma^j(gamma) as the complex root of unity zeta_m^(j * sigma(gamma)).
    Cyclotomic sigma_character(std::size_t a, long j) const {
        return Cyclotomic::root_of_unity(j * elements_.at(a).sigma, m_);
    }

    /// The same group with a different delta (any element with sigma = 1).
    GradedGroup with_delta(std::size_t idx) const {
        if (elements_.at(idx).sigma != 1 % m_) throw InvalidInput("delta must have sigma = 1");
        GradedGroup g = *this;
        g.delta_ = idx;
        return g;
    }

   private:
    friend GradedGroup close_group(std::span<const GeneratorInput>, int, std::size_t);

    int m_ = 1;
    std::size_t n_ = 0;
    std::size_t target_n_ = 0;
    int conductor_ = 1;
    std::vector<GroupElement> elements_;
    std::vector<std::size_t> kernel_;
    std::vector<std::size_t> generators_;
    std::vector<std::size_t> inverses_;
    std::size_t delta_ = 0;
    std::map<std::string, std::size_t> lookup_;

    std::string key(const Matrix& rho, const Matrix& eta) const {
        return rho.embed(conductor_).key() + "|" + eta.embed(conductor_).key();
    }
};

/// Breadth-first closure from the identity. Elements are identified by the
/// exact pair (rho, eta); sigma is propagated additively and must be consistent.
inline GradedGroup close_group(std::span<const GeneratorInput> generators, int m, std::size_t max_order) {
    if (m < 1) throw GroupError("grading modulus must be at least 1");
    if (max_order < 1) throw GroupError("max_order must be at least 1");
    if (generators.empty()) throw GroupError("at least one generator required");

    GradedGroup g;
    g.m_ = m;
    g.n_ = generators.front().rho.rows();
    const bool eta_given = generators.front().eta.rows() > 0;
    g.target_n_ = eta_given ? generators.front().eta.rows() : g.n_;
    g.conductor_ = m;

    std::vector<GeneratorInput> gens;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        GeneratorInput gi = generators[i];
        if (!gi.rho.is_square() || gi.rho.rows() != g.n_)
            throw GroupError("generator " + std::to_string(i) + ": rho must be square of size " + std::to_string(g.n_));
        if ((gi.eta.rows() > 0) != eta_given)
            throw GroupError("generator " + std::to_string(i) + ": eta must be given for all generators or none");
        if (!eta_given) gi.eta = gi.rho;
        if (!gi.eta.is_square() || gi.eta.rows() != g.target_n_)
            throw GroupError("generator " + std::to_string(i) + ": eta must be square of size " +
                             std::to_string(g.target_n_));
        if (gi.sigma < 0 || gi.sigma >= m)
            throw GroupError("generator " + std::to_string(i) + ": sigma value out of range");
        g.conductor_ = std::lcm(g.conductor_, std::lcm(gi.rho.conductor(), gi.eta.conductor()));
        gens.push_back(std::move(gi));
    }
    for (auto& gi : gens) {
        gi.rho = gi.rho.embed(g.conductor_);
        gi.eta = gi.eta.embed(g.conductor_);
    }

    auto add = [&](Matrix rho, Matrix eta, int sigma) -> std::size_t {
        std::string k = g.key(rho, eta);
        if (auto it = g.lookup_.find(k); it != g.lookup_.end()) {
            if (g.elements_[it->second].sigma != sigma) throw GroupError("sigma ill-defined");
            return it->second;
        }
        if (g.elements_.size() >= max_order)
            throw GroupError("not finite within bound (max_order = " + std::to_string(max_order) + ")");
        const std::size_t idx = g.elements_.size();
        g.elements_.push_back(GroupElement{std::move(rho), std::move(eta), sigma, idx});
        g.lookup_.emplace(std::move(k), idx);
        return idx;
    };

    add(Matrix::identity(g.n_), Matrix::identity(g.target_n_), 0);
    for (std::size_t cur = 0; cur < g.elements_.size(); ++cur) {
        for (const auto& gi : gens) {
            const GroupElement& e = g.elements_[cur];
            Matrix rho = e.rho * gi.rho;
            Matrix eta = e.eta * gi.eta;
            add(std::move(rho), std::move(eta), (e.sigma + gi.sigma) % m);
        }
    }
    for (const auto& gi : gens) g.generators_.push_back(*g.find(gi.rho, gi.eta));

    const int one = 1 % m;
    std::optional<std::size_t> delta;
    for (const auto& e : g.elements_) {
        if (e.sigma == 0) g.kernel_.push_back(e.index);
        if (!delta && e.sigma == one) delta = e.index;
    }
    if (!delta) throw GroupError("sigma not an epimorphism");
    g.delta_ = *delta;

    g.inverses_.assign(g.order(), 0);
    for (std::size_t i = 0; i < g.order(); ++i) {
        std::size_t prev = g.identity();
        std::size_t cur = i;
        std::size_t steps = 0;
        while (cur != g.identity()) {
            prev = cur;
            cur = g.multiply(cur, i);
            if (++steps > g.order()) throw GroupError("generator matrices are not invertible");
        }
        g.inverses_[i] = i == g.identity() ? i : prev;
    }
    return g;
}

inline std::size_t element_inverse(const GradedGroup& g, std::size_t a) { return g.inverse(a); }

/// Trace of rho(gamma) (source) or eta(gamma) (target).
inline Cyclotomic character(const GradedGroup& g, std::size_t a, Side side) {
    const auto& e = g.element(a);
    return side == Side::source ? e.rho.trace() : e.eta.trace();
}

/// [delta^0, delta^1, ..., delta^(m-1)].
inline std::vector<std::size_t> coset_representatives(const GradedGroup& g) {
    std::vector<std::size_t> reps{g.identity()};
    for (int k = 1; k < g.modulus(); ++k) reps.push_back(g.multiply(reps.back(), g.delta()));
    return reps;
}

}  // namespace relequiv
