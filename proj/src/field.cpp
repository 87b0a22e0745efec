#include "nawalk/field.hpp"

#include <numeric>
#include <sstream>

namespace nawalk {

FieldContext common_context(FieldContext a, FieldContext b) {
    if (a.denom == 0 || b.denom == 0) fail(Errc::context_mismatch, "context denominator must be positive");
    return FieldContext{std::lcm(a.denom, b.denom)};
}

FieldElement::FieldElement() : den_(Polynomial::one()), ctx_{1} {}

FieldElement::FieldElement(Polynomial num, Polynomial den, FieldContext ctx)
    : num_(std::move(num)), den_(std::move(den)), ctx_(ctx) {
    canonicalize();
}

FieldElement FieldElement::from_rational(const Rational& value, FieldContext ctx) {
    return FieldElement(Polynomial::constant(value), Polynomial::one(), ctx);
}

FieldElement FieldElement::from_int(long value, FieldContext ctx) {
    return from_rational(Rational(value), ctx);
}

FieldElement FieldElement::tau(FieldContext ctx) {
    return FieldElement(Polynomial::monomial(ctx.denom, 1), Polynomial::one(), ctx);
}

FieldElement FieldElement::tau_power(const Rational& exponent, FieldContext ctx) {
    Rational scaled = exponent * ctx.denom;
    if (scaled.get_den() != 1)
        fail(Errc::incompatible_denominator,
             "exponent " + to_string(exponent) + " needs a finer context than 1/" + std::to_string(ctx.denom));
    if (!scaled.get_num().fits_slong_p()) fail(Errc::internal, "exponent out of range");
    long k = scaled.get_num().get_si();
    if (k >= 0)
        return FieldElement(Polynomial::monomial(static_cast<unsigned>(k), 1), Polynomial::one(), ctx);
    return FieldElement(Polynomial::one(), Polynomial::monomial(static_cast<unsigned>(-k), 1), ctx);
}

FieldElement FieldElement::ratio(Polynomial num, Polynomial den, FieldContext ctx) {
    if (den.is_zero()) fail(Errc::division_by_zero, "zero denominator");
    return FieldElement(std::move(num), std::move(den), ctx);
}

void FieldElement::canonicalize() {
    if (den_.is_zero()) fail(Errc::division_by_zero, "zero denominator");
    if (ctx_.denom == 0) fail(Errc::context_mismatch, "context denominator must be positive");
    if (num_.is_zero()) {
        den_ = Polynomial::one();
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = Polynomial::exact_div(num_, g);
        den_ = Polynomial::exact_div(den_, g);
    }
    const Rational& low = den_.low_coeff();
    if (low != 1) {
        Rational inv = 1 / low;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

FieldElement FieldElement::widened(FieldContext target) const {
    if (target == ctx_) return *this;
    if (target.denom % ctx_.denom != 0)
        fail(Errc::context_mismatch, "cannot widen context 1/" + std::to_string(ctx_.denom) +
                                         " to 1/" + std::to_string(target.denom));
    unsigned factor = target.denom / ctx_.denom;
    FieldElement out = *this;
    out.num_ = out.num_.stretched(factor);
    out.den_ = out.den_.stretched(factor);
    out.ctx_ = target;
    return out;
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    out.num_ = -out.num_;
    return out;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    FieldContext ctx = common_context(ctx_, rhs.ctx_);
    FieldElement a = widened(ctx), b = rhs.widened(ctx);
    return FieldElement(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, ctx);
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const { return *this + (-rhs); }

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    FieldContext ctx = common_context(ctx_, rhs.ctx_);
    FieldElement a = widened(ctx), b = rhs.widened(ctx);
    return FieldElement(a.num_ * b.num_, a.den_ * b.den_, ctx);
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
    if (rhs.is_zero()) fail(Errc::division_by_zero, "field division by zero");
    FieldContext ctx = common_context(ctx_, rhs.ctx_);
    FieldElement a = widened(ctx), b = rhs.widened(ctx);
    return FieldElement(a.num_ * b.den_, a.den_ * b.num_, ctx);
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(Errc::division_by_zero, "inverse of zero");
    return FieldElement(den_, num_, ctx_);
}

FieldElement FieldElement::pow(long k) const {
    if (k == 0) return from_int(1, ctx_);
    FieldElement base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    FieldElement acc = from_int(1, ctx_);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    if (ctx_ == rhs.ctx_) return num_ == rhs.num_ && den_ == rhs.den_;
    FieldContext ctx = common_context(ctx_, rhs.ctx_);
    FieldElement a = widened(ctx), b = rhs.widened(ctx);
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::optional<Rational> FieldElement::valuation() const {
    if (is_zero()) return std::nullopt;
    long num_low = static_cast<long>(num_.low_degree());
    long den_low = static_cast<long>(den_.low_degree());
    return rational_of(num_low - den_low, static_cast<long>(ctx_.denom));
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    return sign_of(num_.low_coeff());  // den normalized with low coefficient 1
}

int FieldElement::compare(const FieldElement& rhs) const { return (*this - rhs).sign(); }

bool FieldElement::is_infinitesimal() const {
    auto v = valuation();
    return v.has_value() && sign_of(*v) > 0;
}

bool FieldElement::is_at_most_finite() const {
    auto v = valuation();
    return !v.has_value() || sign_of(*v) >= 0;
}

bool FieldElement::is_infinitely_large() const {
    auto v = valuation();
    return v.has_value() && sign_of(*v) < 0;
}

Rational FieldElement::real_part() const {
    if (is_zero()) return 0;
    long num_low = static_cast<long>(num_.low_degree());
    long den_low = static_cast<long>(den_.low_degree());
    if (num_low < den_low) fail(Errc::infinitely_large, "real part of an infinitely large element");
    if (num_low > den_low) return 0;
    return num_.low_coeff() / den_.low_coeff();
}

namespace {

void require_positive(const FieldElement& a, const FieldElement& b) {
    if (a.sign() <= 0 || b.sign() <= 0)
        fail(Errc::non_positive_argument, "scale relations require positive elements");
}

Rational ratio_valuation(const FieldElement& a, const FieldElement& b) {
    return *a.valuation() - *b.valuation();
}

} // namespace

bool vanishes_relative(const FieldElement& a, const FieldElement& b) {
    require_positive(a, b);
    return sign_of(ratio_valuation(a, b)) > 0;
}

bool bounded_relative(const FieldElement& a, const FieldElement& b) {
    require_positive(a, b);
    return sign_of(ratio_valuation(a, b)) >= 0;
}

bool same_scale(const FieldElement& a, const FieldElement& b) {
    require_positive(a, b);
    return sign_of(ratio_valuation(a, b)) == 0;
}

} // namespace nawalk
