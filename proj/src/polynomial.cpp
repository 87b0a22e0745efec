#include "nawalk/polynomial.hpp"

#include "nawalk/errors.hpp"

#include <utility>
#include <vector>

namespace nawalk {

Polynomial Polynomial::constant(const Rational& c) {
    Polynomial p;
    p.add_term(0, c);
    return p;
}

Polynomial Polynomial::monomial(unsigned degree, const Rational& coeff) {
    Polynomial p;
    p.add_term(degree, coeff);
    return p;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

unsigned Polynomial::low_degree() const {
    if (is_zero()) fail(Errc::internal, "low_degree of zero polynomial");
    return terms_.begin()->first;
}

unsigned Polynomial::degree() const {
    if (is_zero()) fail(Errc::internal, "degree of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Polynomial::low_coeff() const {
    if (is_zero()) fail(Errc::internal, "low_coeff of zero polynomial");
    return terms_.begin()->second;
}

const Rational& Polynomial::lead_coeff() const {
    if (is_zero()) fail(Errc::internal, "lead_coeff of zero polynomial");
    return terms_.rbegin()->second;
}

Rational Polynomial::coeff(unsigned degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(unsigned degree, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(degree, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, -c);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial out = *this;
    for (const auto& [d, c] : rhs.terms_) out.add_term(d, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial out = *this;
    for (const auto& [d, c] : rhs.terms_) out.add_term(d, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    Polynomial out;
    for (const auto& [da, ca] : terms_)
        for (const auto& [db, cb] : rhs.terms_) out.add_term(da + db, ca * cb);
    return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    Polynomial out;
    if (sgn(factor) == 0) return out;
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, c * factor);
    return out;
}

Polynomial Polynomial::shifted(unsigned degrees) const {
    Polynomial out;
    for (const auto& [d, c] : terms_) out.terms_.emplace(d + degrees, c);
    return out;
}

Polynomial Polynomial::stretched(unsigned factor) const {
    if (factor == 0) fail(Errc::internal, "stretch factor must be positive");
    Polynomial out;
    for (const auto& [d, c] : terms_) out.terms_.emplace(d * factor, c);
    return out;
}

void Polynomial::divmod(const Polynomial& num, const Polynomial& den,
                        Polynomial& quot, Polynomial& rem) {
    if (den.is_zero()) fail(Errc::division_by_zero, "polynomial division by zero");
    quot = Polynomial();
    rem = num;
    const unsigned dd = den.degree();
    const Rational& dl = den.lead_coeff();
    while (!rem.is_zero() && rem.degree() >= dd) {
        unsigned shift = rem.degree() - dd;
        Rational factor = rem.lead_coeff() / dl;
        quot.add_term(shift, factor);
        rem = rem - den.shifted(shift).scaled(factor);
    }
}

Polynomial Polynomial::exact_div(const Polynomial& num, const Polynomial& den) {
    Polynomial q, r;
    divmod(num, den, q, r);
    if (!r.is_zero()) fail(Errc::internal, "inexact polynomial division");
    return q;
}

namespace {

using IntPoly = std::map<unsigned, Integer>;

// Clear rational denominators and strip integer content; the sign of the
// leading coefficient is preserved.
IntPoly primitive_integer(const Polynomial& p) {
    Integer denom_lcm = 1;
    for (const auto& [d, c] : p.terms()) denom_lcm = lcm(denom_lcm, Integer(c.get_den()));
    IntPoly out;
    Integer content = 0;
    for (const auto& [d, c] : p.terms()) {
        Integer v = c.get_num() * (denom_lcm / c.get_den());
        content = gcd(content, v);
        out.emplace(d, std::move(v));
    }
    if (content > 1)
        for (auto& [d, v] : out) v /= content;
    return out;
}

unsigned int_degree(const IntPoly& p) { return p.rbegin()->first; }

void strip_content(IntPoly& p) {
    Integer content = 0;
    for (const auto& [d, v] : p) content = gcd(content, v);
    if (content > 1)
        for (auto& [d, v] : p) v /= content;
}

void int_add_term(IntPoly& p, unsigned degree, Integer v) {
    if (sgn(v) == 0) return;
    auto it = p.find(degree);
    if (it == p.end()) {
        p.emplace(degree, std::move(v));
    } else {
        it->second += v;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

// Pseudo-remainder of a by b: lead(b)^(deg a - deg b + 1) * a reduced mod b.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const unsigned db = int_degree(b);
    const Integer& bl = b.rbegin()->second;
    while (!a.empty() && int_degree(a) >= db) {
        const unsigned shift = int_degree(a) - db;
        const Integer al = a.rbegin()->second;
        IntPoly next;
        for (const auto& [d, v] : a) int_add_term(next, d, v * bl);
        for (const auto& [d, v] : b) int_add_term(next, d + shift, -al * v);
        a = std::move(next);
    }
    return a;
}

} // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return Polynomial();
    auto normalize = [](IntPoly p) {
        strip_content(p);
        if (p.rbegin()->second < 0)
            for (auto& [d, v] : p) v = -v;
        Polynomial out;
        for (const auto& [d, v] : p) out.add_term(d, Rational(v));
        return out;
    };
    if (a.is_zero()) return normalize(primitive_integer(b));
    if (b.is_zero()) return normalize(primitive_integer(a));

    IntPoly u = primitive_integer(a);
    IntPoly v = primitive_integer(b);
    if (int_degree(u) < int_degree(v)) std::swap(u, v);
    // primitive PRS
    while (true) {
        IntPoly r = pseudo_rem(u, v);
        if (r.empty()) break;
        strip_content(r);
        u = std::move(v);
        v = std::move(r);
    }
    return normalize(std::move(v));
}

} // namespace nawalk
