#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace reviham {

inline constexpr int kMaxVariables = 16;

/// Exponent vector x_1^{a_1} y_1^{b_1} ... over a fixed number of variables.
///
/// Monomials are totally ordered by the graded order used everywhere in the
/// library: lower total degree first, and within a degree the lexicographically
/// larger exponent vector first (so x^2 < xy < y^2 in two variables).
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(int dimension) : dim_(check_dim(dimension)) {}

    Monomial(std::initializer_list<int> exponents) : Monomial(std::span<const int>(exponents.begin(), exponents.size())) {}

    explicit Monomial(std::span<const int> exponents) : dim_(check_dim(static_cast<int>(exponents.size()))) {
        for (int i = 0; i < dim_; ++i) set(i, exponents[i]);
    }

    static Monomial unit(int dimension, int var) {
        Monomial m(dimension);
        m.set(var, 1);
        return m;
    }

    int dimension() const { return dim_; }
    int degree() const { return deg_; }

    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }

    void set(int i, int e) {
        if (i < 0 || i >= dim_) throw std::out_of_range("monomial variable index");
        if (e < 0 || e > 255) throw std::out_of_range("monomial exponent");
        auto& slot = exps_[static_cast<std::size_t>(i)];
        deg_ = static_cast<std::uint16_t>(deg_ - slot + e);
        slot = static_cast<std::uint8_t>(e);
    }

    std::vector<int> exponents() const { return {exps_.begin(), exps_.begin() + dim_}; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.dim_);
        for (int i = 0; i < a.dim_; ++i) r.set(i, a[i] + b[i]);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.dim_ == b.dim_ && a.exps_ == b.exps_;
    }

    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
        if (a.deg_ != b.deg_) return a.deg_ <=> b.deg_;
        const int c = std::memcmp(a.exps_.data(), b.exps_.data(), static_cast<std::size_t>(a.dim_));
        return 0 <=> c;
    }

private:
    static std::uint8_t check_dim(int d) {
        if (d < 0 || d > kMaxVariables) throw std::out_of_range("monomial dimension");
        return static_cast<std::uint8_t>(d);
    }

    std::array<std::uint8_t, kMaxVariables> exps_{};
    std::uint8_t dim_ = 0;
    std::uint16_t deg_ = 0;
};

/// All monomials of total degree `degree` in `dimension` variables, in monomial order.
std::vector<Monomial> monomials_of_degree(int dimension, int degree);

}  // namespace reviham
