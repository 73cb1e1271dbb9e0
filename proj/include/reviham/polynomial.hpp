#pragma once

// Sparse multivariate polynomials with exact coefficients.

#include "reviham/errors.hpp"
#include "reviham/monomial.hpp"
#include "reviham/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace reviham {

/// Sparse polynomial in a fixed number of variables. Zero coefficients are never
/// stored, so the zero polynomial has an empty term map and equality is exact.
template <typename Scalar>
class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar>;
    using Traits = ScalarTraits<Scalar>;

    explicit Polynomial(int dimension = 0) : dim_(dimension) {}

    static Polynomial constant(int dimension, const Scalar& c) {
        Polynomial p(dimension);
        p.add_term(Monomial(dimension), c);
        return p;
    }

    static Polynomial variable(int dimension, int index) {
        Polynomial p(dimension);
        p.add_term(Monomial::unit(dimension, index), Scalar(1));
        return p;
    }

    static Polynomial term(const Monomial& m, const Scalar& c) {
        Polynomial p(m.dimension());
        p.add_term(m, c);
        return p;
    }

    int dimension() const { return dim_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Highest total degree, -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
    /// Lowest total degree, -1 for the zero polynomial.
    int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    bool is_homogeneous(int d) const {
        return is_zero() || (min_degree() == d && degree() == d);
    }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    Scalar constant_term() const { return coefficient(Monomial(dim_)); }

    Polynomial& add_term(const Monomial& m, const Scalar& c) {
        if (m.dimension() != dim_) throw DimensionMismatch("monomial dimension does not match polynomial");
        if (Traits::is_zero(c)) return *this;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
        return *this;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Scalar& s) {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = multiply(*this, o); }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    /// Product keeping only terms of total degree <= max_degree (all terms if negative).
    static Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_degree = -1) {
        a.check_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ma, ca] : a.terms_) {
            if (max_degree >= 0 && ma.degree() > max_degree) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (max_degree >= 0 && ma.degree() + mb.degree() > max_degree) break;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }

private:
    void check_dim(const Polynomial& o) const {
        if (o.dim_ != dim_) {
            throw DimensionMismatch("polynomial dimensions differ: " + std::to_string(dim_) + " vs " +
                                    std::to_string(o.dim_));
        }
    }

    int dim_;
    Terms terms_;
};

using Poly = Polynomial<Rational>;
using ComplexPoly = Polynomial<GaussianRational>;

/// A vector of polynomials of one dimension: a vector field or a polynomial map.
template <typename Scalar>
using PolyVector = std::vector<Polynomial<Scalar>>;
using PolyMap = PolyVector<Rational>;

template <typename Scalar>
Polynomial<Scalar> multiply_truncated(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b, int max_degree) {
    return Polynomial<Scalar>::multiply(a, b, max_degree);
}

/// All terms of total degree <= k.
template <typename Scalar>
Polynomial<Scalar> jet(const Polynomial<Scalar>& p, int k) {
    Polynomial<Scalar> r(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() > k) break;
        r.add_term(m, c);
    }
    return r;
}

/// Terms of total degree exactly k.
template <typename Scalar>
Polynomial<Scalar> homogeneous_part(const Polynomial<Scalar>& p, int k) {
    Polynomial<Scalar> r(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() == k) r.add_term(m, c);
    }
    return r;
}

template <typename Scalar>
Polynomial<Scalar> differentiate(const Polynomial<Scalar>& p, int var) {
    if (var < 0 || var >= p.dimension()) throw std::out_of_range("differentiation variable index");
    Polynomial<Scalar> r(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        const int e = m[var];
        if (e == 0) continue;
        Monomial d = m;
        d.set(var, e - 1);
        r.add_term(d, c * Scalar(e));
    }
    return r;
}

/// Composition p(images[0], ..., images[d-1]), optionally truncated at max_degree.
///
/// Partial products are memoized by monomial prefix, so substituting a whole
/// vector of polynomials into the same images shares work through `substitute_all`.
template <typename Scalar>
class Substitution {
public:
    Substitution(std::span<const Polynomial<Scalar>> images, int max_degree)
        : images_(images.begin(), images.end()), max_degree_(max_degree) {
        if (images_.empty()) throw DimensionMismatch("substitution needs at least one image");
        target_dim_ = images_.front().dimension();
        for (const auto& img : images_) {
            if (img.dimension() != target_dim_) throw DimensionMismatch("substitution images differ in dimension");
        }
    }

    Polynomial<Scalar> apply(const Polynomial<Scalar>& p) {
        if (p.dimension() != static_cast<int>(images_.size())) {
            throw DimensionMismatch("substitution arity " + std::to_string(images_.size()) +
                                    " does not match polynomial dimension " + std::to_string(p.dimension()));
        }
        Polynomial<Scalar> r(target_dim_);
        for (const auto& [m, c] : p.terms()) {
            const auto& prod = power_product(m);
            for (const auto& [pm, pc] : prod.terms()) r.add_term(pm, pc * c);
        }
        return r;
    }

private:
    const Polynomial<Scalar>& power_product(const Monomial& m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        Polynomial<Scalar> value(target_dim_);
        if (m.degree() == 0) {
            value = Polynomial<Scalar>::constant(target_dim_, Scalar(1));
        } else {
            int last = m.dimension() - 1;
            while (m[last] == 0) --last;
            Monomial prefix = m;
            prefix.set(last, m[last] - 1);
            const Polynomial<Scalar>& head = power_product(prefix);
            value = Polynomial<Scalar>::multiply(head, images_[static_cast<std::size_t>(last)], max_degree_);
        }
        return cache_.emplace(m, std::move(value)).first->second;
    }

    std::vector<Polynomial<Scalar>> images_;
    int max_degree_;
    int target_dim_ = 0;
    std::map<Monomial, Polynomial<Scalar>> cache_;
};

template <typename Scalar>
Polynomial<Scalar> substitute(const Polynomial<Scalar>& p, std::span<const Polynomial<Scalar>> images,
                              int max_degree = -1) {
    return Substitution<Scalar>(images, max_degree).apply(p);
}

template <typename Scalar>
PolyVector<Scalar> substitute_all(std::span<const Polynomial<Scalar>> ps, std::span<const Polynomial<Scalar>> images,
                                  int max_degree = -1) {
    Substitution<Scalar> sub(images, max_degree);
    PolyVector<Scalar> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(sub.apply(p));
    return out;
}

template <typename Scalar>
PolyVector<Scalar> jet(const PolyVector<Scalar>& v, int k) {
    PolyVector<Scalar> r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(jet(p, k));
    return r;
}

template <typename Scalar>
PolyVector<Scalar> homogeneous_part(const PolyVector<Scalar>& v, int k) {
    PolyVector<Scalar> r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(homogeneous_part(p, k));
    return r;
}

template <typename Scalar>
bool is_zero(const PolyVector<Scalar>& v) {
    for (const auto& p : v) {
        if (!p.is_zero()) return false;
    }
    return true;
}

template <typename Scalar>
PolyVector<Scalar> operator+(PolyVector<Scalar> a, const PolyVector<Scalar>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <typename Scalar>
PolyVector<Scalar> operator-(PolyVector<Scalar> a, const PolyVector<Scalar>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

/// The identity map in `dimension` variables.
template <typename Scalar = Rational>
PolyVector<Scalar> identity_map(int dimension) {
    PolyVector<Scalar> r;
    for (int i = 0; i < dimension; ++i) r.push_back(Polynomial<Scalar>::variable(dimension, i));
    return r;
}

/// Jacobian-vector product Dp(x) . v(x), truncated at max_degree.
template <typename Scalar>
PolyVector<Scalar> jacobian_apply(const PolyVector<Scalar>& p, const PolyVector<Scalar>& v, int max_degree = -1) {
    PolyVector<Scalar> r;
    for (const auto& pi : p) {
        Polynomial<Scalar> acc(pi.dimension());
        for (int k = 0; k < pi.dimension(); ++k) {
            acc += Polynomial<Scalar>::multiply(differentiate(pi, k), v[static_cast<std::size_t>(k)], max_degree);
        }
        r.push_back(std::move(acc));
    }
    return r;
}

/// Linear part of a polynomial map as a dense matrix: entry (i, k) = d p_i / d x_k at 0.
MatrixXr linear_part(const PolyMap& p);

/// Linear map x -> M x as polynomials.
PolyMap linear_map(const MatrixXr& m);

/// Matrix-vector product M . v over polynomial entries.
PolyMap apply_matrix(const MatrixXr& m, const PolyMap& v);

ComplexPoly promote(const Poly& p);

/// Real parts of a polynomial whose coefficients must all be real; throws otherwise.
Poly real_part_checked(const ComplexPoly& p);

/// Variable names x1 y1 x2 y2 ... for an even-dimensional phase space.
std::string variable_name(int dimension, int index);

/// Canonical serialization: one term per line "+p/q x1^a1 y1^b1 ...", monomial order.
std::string serialize(const Poly& p);

/// Parses one term line of the canonical serialization and adds it to p.
void parse_term_line(std::string_view line, Poly& p);

/// Human-readable single-line rendering, for diagnostics.
std::string to_string(const Poly& p);
std::string to_string(const Monomial& m);

}  // namespace reviham
