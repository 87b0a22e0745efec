#pragma once

#include "nawalk/rational.hpp"

#include <map>
#include <string>

namespace nawalk {

// Univariate polynomial over the rationals, sparse by degree.
// Zero coefficients are never stored; the zero polynomial is the empty map.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(unsigned degree, const Rational& coeff);
    static Polynomial one() { return constant(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_.rbegin()->first == 0; }
    bool is_one() const;

    unsigned low_degree() const;  // smallest degree carrying a nonzero coefficient
    unsigned degree() const;      // largest
    const Rational& low_coeff() const;
    const Rational& lead_coeff() const;
    Rational coeff(unsigned degree) const;  // zero when absent

    void add_term(unsigned degree, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial scaled(const Rational& factor) const;
    Polynomial shifted(unsigned degrees) const;     // multiply by s^degrees
    Polynomial stretched(unsigned factor) const;    // degree k -> k*factor

    bool operator==(const Polynomial& rhs) const = default;

    // Euclidean division over Q: num = quot*den + rem, deg(rem) < deg(den).
    static void divmod(const Polynomial& num, const Polynomial& den,
                       Polynomial& quot, Polynomial& rem);
    // Division known to be exact; throws on a nonzero remainder.
    static Polynomial exact_div(const Polynomial& num, const Polynomial& den);

    // Gcd normalized to an integer-primitive polynomial with positive leading
    // coefficient; gcd(0, b) is that normalization of b.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b);

    const std::map<unsigned, Rational>& terms() const { return terms_; }

private:
    std::map<unsigned, Rational> terms_;
};

} // namespace nawalk
