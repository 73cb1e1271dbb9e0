#pragma once

// Shared builders and seeded random generators for the test programs.

#include "reviham/field.hpp"
#include "reviham/invariant.hpp"

#include <random>
#include <vector>

namespace reviham::testing {

inline Rational q(long p, long d = 1) { return Rational(p, d); }

inline Poly var(int d, int i) { return Poly::variable(d, i); }

inline Poly cst(int d, const Rational& c) { return Poly::constant(d, c); }

inline Poly pow(const Poly& p, int e) {
    Poly r = cst(p.dimension(), 1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

/// Delta_j (elliptic) or Gamma_j (saddle) as a polynomial on R^{2n}.
inline Poly invariant(int n, int j, SpectrumKind kind) { return invariant_images(n, kind)[static_cast<std::size_t>(j)]; }

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    /// p/q with |p| <= num and 1 <= q <= den.
    Rational rational(int num = 5, int den = 4) { return Rational(integer(-num, num), integer(1, den)); }

    Rational nonzero_rational(int num = 5, int den = 4) {
        for (;;) {
            Rational r = rational(num, den);
            if (r != 0) return r;
        }
    }

    Poly poly(int d, int min_degree, int max_degree, double density = 0.5, int num = 5, int den = 4) {
        Poly p(d);
        for (int deg = min_degree; deg <= max_degree; ++deg) {
            for (const auto& m : monomials_of_degree(d, deg)) {
                if (coin(density)) p.add_term(m, rational(num, den));
            }
        }
        return p;
    }

    PolyMap map(int d, int min_degree, int max_degree, double density = 0.5, int num = 5, int den = 4) {
        PolyMap out;
        for (int i = 0; i < d; ++i) out.push_back(poly(d, min_degree, max_degree, density, num, den));
        return out;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// (X - L X(Lx)) / 2: the phi-reversible part for a linear involution L.
inline PolyMap reversible_part(const PolyMap& x, const MatrixXr& l) {
    const PolyMap mirrored = apply_matrix(l, compose(x, linear_map(l), -1));
    PolyMap out = x - mirrored;
    for (auto& p : out) p *= Rational(1, 2);
    return out;
}

/// Random field reversible under the canonical involution, normalized linear part,
/// nonlinear terms of degree 2..order.
inline VectorField random_reversible_field(Gen& g, SpectrumKind kind, std::vector<Rational> freqs, int order,
                                           double density = 0.3, int num = 3, int den = 3) {
    const int d = static_cast<int>(2 * freqs.size());
    const MatrixXr l = Involution::canonical(d / 2, kind).linearization();
    PolyMap comps = linear_map(normalized_linear_part(kind, freqs)) +
                    reversible_part(g.map(d, 2, order, density, num, den), l);
    return {kind, std::move(freqs), std::move(comps)};
}

/// The invariant-shape field: elliptic x_j' = -y_j F_j(Delta), y_j' = x_j F_j(Delta);
/// saddle x_j' = x_j F_j(Gamma), y_j' = -y_j F_j(Gamma), with F_j = freq_j + f_j.
inline VectorField shaped_field(SpectrumKind kind, const std::vector<Rational>& freqs, const std::vector<Poly>& f) {
    const int n = static_cast<int>(freqs.size());
    const int d = 2 * n;
    const PolyMap images = invariant_images(n, kind);
    PolyMap comps;
    for (int j = 0; j < n; ++j) {
        const Poly fj = cst(d, freqs[static_cast<std::size_t>(j)]) + substitute<Rational>(f[static_cast<std::size_t>(j)], images);
        const Poly x = var(d, 2 * j);
        const Poly y = var(d, 2 * j + 1);
        if (kind == SpectrumKind::elliptic) {
            comps.push_back(-(y * fj));
            comps.push_back(x * fj);
        } else {
            comps.push_back(x * fj);
            comps.push_back(-(y * fj));
        }
    }
    return {kind, freqs, std::move(comps)};
}

}  // namespace reviham::testing

#include "reviham/hamiltonize.hpp"
#include "reviham/normalform.hpp"

namespace reviham::testing {

/// Random frequencies with no accidental resonance up to `order`.
inline std::vector<Rational> nonresonant_frequencies(Gen& g, SpectrumKind kind, int n, int order) {
    for (;;) {
        std::vector<Rational> freqs{Rational(1)};
        for (int j = 1; j < n; ++j) freqs.push_back(Rational(g.integer(11, 40), g.integer(7, 13)));
        if (accidental_resonances(kind, freqs, order).empty()) return freqs;
    }
}

/// Random invariant-shape field up to invariant degree `top`, with a symmetric
/// cubic block of nonzero entries.
inline InvariantField random_invariant_field(Gen& g, SpectrumKind kind, std::vector<Rational> freqs, int top,
                                             double density = 0.6) {
    const int n = static_cast<int>(freqs.size());
    MatrixXr c(n, n);
    for (int j = 0; j < n; ++j) {
        for (int r = j; r < n; ++r) c(j, r) = c(r, j) = g.nonzero_rational(20, 9);
    }
    std::vector<Poly> f;
    for (int j = 0; j < n; ++j) {
        Poly p = g.poly(n, 2, top, density, 3, 3);
        for (int r = 0; r < n; ++r) p.add_term(Monomial::unit(n, r), c(j, r));
        f.push_back(std::move(p));
    }
    return {kind, std::move(freqs), std::move(f)};
}

/// x pushed forward by a random near-identity map commuting with the linear
/// involution phi: still phi-reversible, same normal form, no longer in it.
inline VectorField disguised_field(Gen& g, const VectorField& x, const Involution& phi, int order, double density = 0.4) {
    const int d = x.dimension();
    const MatrixXr l = phi.linearization();
    const PolyMap h = g.map(d, 2, order, density, 2, 3);
    PolyMap psi = h + apply_matrix(l, compose(h, linear_map(l), -1));
    for (auto& p : psi) p *= Rational(1, 2);
    psi = identity_map(d) + psi;
    return pushforward(psi, x, order);
}

/// Like disguised_field, with the map averaged over the group generated by two
/// linear reversors so that both survive.
inline VectorField d4_disguised_field(Gen& g, const VectorField& x, const Involution& g1, const Involution& g2, int order,
                                      double density = 0.3) {
    const int d = x.dimension();
    const PolyMap h = g.map(d, 2, order, density, 2, 2);
    const auto group = reversing_group(g1.linearization(), g2.linearization());
    PolyMap avg(static_cast<std::size_t>(d), Poly(d));
    for (const auto& [m, sign] : group) avg = avg + apply_matrix(m, compose(h, linear_map(m.transpose()), -1));
    for (auto& p : avg) p *= Rational(1, static_cast<long>(group.size()));
    return pushforward(identity_map(d) + avg, x, order);
}

inline PolyMap vector_monomial(const Monomial& m, int s) {
    PolyMap v(static_cast<std::size_t>(m.dimension()), Poly(m.dimension()));
    v[static_cast<std::size_t>(s)].add_term(m, Rational(1));
    return v;
}

// Dense matrix of h -> Dh.Ax - Ah on the basis of vector monomials of degree m,
// built from the definition column by column with explicit derivatives.
inline MatrixXr dense_homological(const MatrixXr& a, int m) {
    const int d = static_cast<int>(a.rows());
    std::vector<std::pair<Monomial, int>> basis;
    for (const auto& mono : monomials_of_degree(d, m)) {
        for (int s = 0; s < d; ++s) basis.emplace_back(mono, s);
    }
    const auto size = static_cast<Eigen::Index>(basis.size());
    MatrixXr out = MatrixXr::Zero(size, size);
    for (Eigen::Index col = 0; col < size; ++col) {
        const auto& [mono, s] = basis[static_cast<std::size_t>(col)];
        for (Eigen::Index row = 0; row < size; ++row) {
            const auto& [target, t] = basis[static_cast<std::size_t>(row)];
            Rational value = 0;
            // Dh.Ax: only component s of h is nonzero; d/dx_k of x^mono times (Ax)_k.
            if (t == s) {
                for (int k = 0; k < d; ++k) {
                    if (mono[k] == 0) continue;
                    for (int l = 0; l < d; ++l) {
                        if (a(k, l) == 0) continue;
                        Monomial img = mono;
                        img.set(k, mono[k] - 1);
                        img.set(l, img[l] + 1);
                        if (img == target) value += Rational(mono[k]) * a(k, l);
                    }
                }
            }
            // -A h
            if (mono == target) value -= a(t, s);
            out(row, col) = value;
        }
    }
    return out;
}

inline MatrixXr operator_matrix(const MatrixXr& a, int m) {
    const int d = static_cast<int>(a.rows());
    std::vector<std::pair<Monomial, int>> basis;
    for (const auto& mono : monomials_of_degree(d, m)) {
        for (int s = 0; s < d; ++s) basis.emplace_back(mono, s);
    }
    const auto size = static_cast<Eigen::Index>(basis.size());
    MatrixXr out = MatrixXr::Zero(size, size);
    for (Eigen::Index col = 0; col < size; ++col) {
        const auto& [mono, s] = basis[static_cast<std::size_t>(col)];
        const PolyMap image = homological_operator(a, vector_monomial(mono, s));
        for (Eigen::Index row = 0; row < size; ++row) {
            const auto& [target, t] = basis[static_cast<std::size_t>(row)];
            out(row, col) = image[static_cast<std::size_t>(t)].coefficient(target);
        }
    }
    return out;
}

}  // namespace reviham::testing
