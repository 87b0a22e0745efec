#include "nawalk/field.hpp"

#include <cctype>

namespace nawalk {

namespace {

struct Parser {
    const std::string& text;
    FieldContext ctx;
    size_t pos = 0;

    [[noreturn]] void err(const std::string& msg) const {
        fail(Errc::parse_error, "field literal '" + text + "' at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) err(std::string("expected '") + c + "'");
    }

    std::string digits() {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) err("expected digits");
        return text.substr(start, pos - start);
    }

    Rational unsigned_rational() {
        std::string num = digits();
        if (eat('/')) return parse_rational(num + "/" + digits());
        return parse_rational(num);
    }

    Rational signed_rational() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Rational r = unsigned_rational();
        return neg ? Rational(-r) : r;
    }

    FieldElement tau_factor() {
        expect('t');
        Rational exponent = 1;
        if (eat('^')) exponent = signed_rational();
        return FieldElement::tau_power(exponent, ctx);
    }

    FieldElement term() {
        skip_ws();
        if (peek() == 't') return tau_factor();
        Rational c = unsigned_rational();
        skip_ws();
        if (eat('*')) {
            skip_ws();
            return FieldElement::from_rational(c, ctx) * tau_factor();
        }
        return FieldElement::from_rational(c, ctx);
    }

    FieldElement sum() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        FieldElement acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    FieldElement literal() {
        skip_ws();
        FieldElement value = FieldElement::from_int(0, ctx);
        if (peek() == '(') {
            expect('(');
            value = sum();
            skip_ws();
            expect(')');
            skip_ws();
            if (eat('/')) {
                skip_ws();
                expect('(');
                FieldElement den = sum();
                skip_ws();
                expect(')');
                value = value / den;
            }
        } else {
            value = sum();
        }
        skip_ws();
        if (pos != text.size()) err("trailing input");
        return value;
    }
};

std::string exponent_string(const Rational& e) { return to_string(e); }

// Terms in descending degree; `offset` shifts all s-degrees (negative for
// monomial denominators).
std::string render_sum(const Polynomial& p, long offset, unsigned denom) {
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Rational& c = it->second;
        Rational e = rational_of(static_cast<long>(it->first) + offset, static_cast<long>(denom));
        std::string power;
        if (e != 0) {
            power = "t";
            if (e != 1) power += "^" + exponent_string(e);
        }
        Rational mag = abs(c);
        std::string body;
        if (power.empty())
            body = to_string(mag);
        else if (mag == 1)
            body = power;
        else
            body = to_string(mag) + "*" + power;
        if (first) {
            out += (sgn(c) < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (sgn(c) < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace

FieldElement parse_field_literal(const std::string& text, FieldContext ctx) {
    Parser parser{text, ctx};
    return parser.literal();
}

std::string FieldElement::to_literal() const {
    if (is_zero()) return "0";
    if (den_.is_one()) return render_sum(num_, 0, ctx_.denom);
    if (den_.terms().size() == 1)
        return render_sum(num_, -static_cast<long>(den_.low_degree()), ctx_.denom);

    // Display scale: integer coefficients with jointly coprime content.
    Integer denom_lcm = 1;
    for (const auto& [d, c] : num_.terms())
        denom_lcm = lcm(denom_lcm, Integer(c.get_den()));
    for (const auto& [d, c] : den_.terms())
        denom_lcm = lcm(denom_lcm, Integer(c.get_den()));
    Integer content = 0;
    auto fold_content = [&](const Polynomial& p) {
        for (const auto& [d, c] : p.terms()) {
            Integer v = c.get_num() * (denom_lcm / c.get_den());
            content = gcd(content, v);
        }
    };
    fold_content(num_);
    fold_content(den_);
    Rational scale(denom_lcm, content == 0 ? Integer(1) : content);
    scale.canonicalize();
    Polynomial num_disp = num_.scaled(scale);
    Polynomial den_disp = den_.scaled(scale);
    return "(" + render_sum(num_disp, 0, ctx_.denom) + ")/(" + render_sum(den_disp, 0, ctx_.denom) + ")";
}

} // namespace nawalk
