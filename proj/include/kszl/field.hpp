#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kszl/error.hpp"

namespace kszl {

using Rational = mpq_class;

namespace detail {
struct Modulus;
}

/// Ground field: either QQ or QQ[t]/(m(t)) for a monic squarefree m.
///
/// Extension moduli are interned for the lifetime of the process, so a
/// FieldSpec is a cheap value and elements can refer back to their modulus
/// without ownership.  Irreducibility of m is not checked; a zero divisor
/// shows up as NotInvertible when something tries to invert it.
class FieldSpec {
public:
    enum class Kind { Rationals, Extension };

    FieldSpec() = default;

    static FieldSpec rationals() { return FieldSpec(); }
    /// `modulus` is low-to-high, monic, degree >= 1 and squarefree.
    static FieldSpec extension(const std::vector<Rational>& modulus);

    Kind kind() const noexcept { return modulus_ ? Kind::Extension : Kind::Rationals; }
    std::size_t degree() const noexcept;
    /// Low-to-high coefficients of m(t); {0, 1} style list, empty for QQ.
    const std::vector<Rational>& modulus() const;
    const detail::Modulus* handle() const noexcept { return modulus_; }

    /// "QQ" or "QQ adjoin t mod <m(t)>".
    std::string to_string() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.modulus_ == b.modulus_; }

private:
    explicit FieldSpec(const detail::Modulus* m) : modulus_(m) {}
    const detail::Modulus* modulus_ = nullptr;
};

/// Exact element of a FieldSpec, stored as its reduced residue.
///
/// Rational constants carry no modulus and combine with elements of any
/// field.  Two elements are equal iff their reduced coefficient vectors
/// coincide.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(long v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
    FieldElement(Rational v) : c0_(std::move(v)) { c0_.canonicalize(); }  // NOLINT
    /// Residue of a polynomial (low-to-high) in `field`.
    FieldElement(const FieldSpec& field, std::vector<Rational> poly);

    static FieldElement generator(const FieldSpec& field);  // the class of t

    bool is_zero() const noexcept { return hi_.empty() && sgn(c0_) == 0; }
    bool is_one() const noexcept { return hi_.empty() && c0_ == 1; }
    bool is_rational() const noexcept { return hi_.empty(); }
    const Rational& constant() const noexcept { return c0_; }
    const detail::Modulus* modulus_handle() const noexcept { return mod_; }
    /// Dense residue of length field.degree() (1 for QQ).
    std::vector<Rational> dense(const FieldSpec& field) const;

    FieldElement inverse() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    FieldElement operator-() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.c0_ == b.c0_ && a.hi_ == b.hi_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    /// "p/q" for rationals, "1/2*t + 3" style polynomial otherwise.
    std::string to_string() const;
    /// Inverse of to_string; `t` is only accepted for extension fields.
    static FieldElement parse(std::string_view text, const FieldSpec& field);

private:
    void trim();
    void adopt(const FieldElement& o);

    Rational c0_;
    std::vector<Rational> hi_;  // coefficients of t, t^2, ...; no trailing zeros
    const detail::Modulus* mod_ = nullptr;
};

FieldElement field_inverse(const FieldElement& x, const FieldSpec& field);

namespace poly {
// Dense univariate polynomials over QQ, low-to-high, trailing zeros trimmed.
using Poly = std::vector<Rational>;
void trim(Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
/// Quotient and remainder by a nonzero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
/// Monic gcd (empty when both inputs are zero).
Poly gcd(Poly a, Poly b);
std::string to_string(const Poly& p, char var = 't');
/// Reads sums of terms like "3", "-1/2*t^2", "t"; throws InvalidArgument.
Poly parse(std::string_view text, char var = 't');
}  // namespace poly

}  // namespace kszl
