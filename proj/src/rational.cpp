#include "nawalk/rational.hpp"

#include "nawalk/errors.hpp"

namespace nawalk {

Rational rational_of(long num, long den) {
    if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        fail(Errc::parse_error, "bad rational literal: '" + text + "'");
    if (sgn(r.get_den()) == 0)
        fail(Errc::parse_error, "zero denominator in rational literal: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

} // namespace nawalk
