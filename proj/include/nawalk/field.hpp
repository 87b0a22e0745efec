#pragma once

#include "nawalk/errors.hpp"
#include "nawalk/polynomial.hpp"

#include <optional>
#include <string>

namespace nawalk {

// The ordered field Q(t^(1/denom)), realized as ratios of polynomials in
// s = t^(1/denom) and ordered by the sign of the germ at t -> 0+.  t is the
// designated infinitesimal; 1/t is infinitely large.
struct FieldContext {
    unsigned denom = 1;
    bool operator==(const FieldContext&) const = default;
};

// Widened context covering both operands (denominator lcm).
FieldContext common_context(FieldContext a, FieldContext b);

// Canonical form: gcd(num, den) = 1 and the lowest-order coefficient of den
// is 1.  Equality and sign are then decided by inspection.
class FieldElement {
public:
    FieldElement();
    static FieldElement from_rational(const Rational& value, FieldContext ctx = {});
    static FieldElement from_int(long value, FieldContext ctx = {});
    static FieldElement tau(FieldContext ctx = {});
    // t^exponent; the exponent's denominator must divide ctx.denom.
    static FieldElement tau_power(const Rational& exponent, FieldContext ctx = {});
    static FieldElement ratio(Polynomial num, Polynomial den, FieldContext ctx);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    FieldContext context() const { return ctx_; }
    FieldElement widened(FieldContext target) const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement& operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
    FieldElement& operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
    FieldElement& operator*=(const FieldElement& rhs) { return *this = *this * rhs; }
    FieldElement& operator/=(const FieldElement& rhs) { return *this = *this / rhs; }

    FieldElement inverse() const;
    FieldElement pow(long k) const;

    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    // Lowest t-exponent; nullopt encodes +infinity (the zero element only).
    // valuation(a*b) = valuation(a) + valuation(b).
    std::optional<Rational> valuation() const;

    int sign() const;  // sign of the germ at t -> 0+
    int compare(const FieldElement& rhs) const;
    bool operator<(const FieldElement& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const FieldElement& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const FieldElement& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const FieldElement& rhs) const { return compare(rhs) >= 0; }
    FieldElement abs() const { return sign() >= 0 ? *this : -*this; }

    bool is_infinitesimal() const;    // nonzero with valuation > 0
    bool is_at_most_finite() const;   // valuation >= 0, or zero
    bool is_infinitely_large() const; // valuation < 0

    // The unique rational differing from this element by an infinitesimal.
    // Requires an at-most-finite element.
    Rational real_part() const;

    // Render in the literal grammar (see parse_field_literal).
    std::string to_literal() const;

private:
    FieldElement(Polynomial num, Polynomial den, FieldContext ctx);
    void canonicalize();

    Polynomial num_;
    Polynomial den_;
    FieldContext ctx_;
};

// Scale relations for positive elements: a is negligible against b, a is
// bounded by a rational multiple of b, a and b have the same scale.
bool vanishes_relative(const FieldElement& a, const FieldElement& b);
bool bounded_relative(const FieldElement& a, const FieldElement& b);
bool same_scale(const FieldElement& a, const FieldElement& b);

// Literal grammar: signed sums of terms `c`, `c*t^e`, `t^e` where c is a
// rational (`p/q` or integer) and e a rational exponent; a parenthesized
// ratio `(sum)/(sum)` is also accepted.  Examples: `t^-2`, `3/2*t + 1`,
// `(1+t)/(1-t)`.
FieldElement parse_field_literal(const std::string& text, FieldContext ctx = {});

} // namespace nawalk
