#pragma once

// Exact scalar types: GMP-backed rationals and Gaussian rationals.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace reviham {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using MatrixXr = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXr = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Parses "p", "-p", "+p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, the denominator always present ("3/1", "-1/2", "0/1").
std::string format_rational(const Rational& r);

/// Signed form "+p/q" / "-p/q" used in polynomial serialization.
std::string format_signed_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Element of Q(i). Field arithmetic is closed; conjugation is an involution.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
    GaussianRational(int re) : re_(re) {}                  // NOLINT(implicit)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

private:
    Rational re_{0};
    Rational im_{0};
};

/// Scalar traits used by the templated polynomial code.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static bool is_zero(const Rational& r) { return r == 0; }
    static const char* name() { return "rational"; }
};

template <>
struct ScalarTraits<GaussianRational> {
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    static const char* name() { return "gaussian-rational"; }
};

}  // namespace reviham
