#include "katz/rational.hpp"

#include <cctype>

#include "katz/errors.hpp"

namespace katz {

std::string to_pq_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto digits = [&](const char* what) {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == start) {
            throw ParseError(pos, std::string("expected ") + what);
        }
        return std::string(text.substr(start, pos - start));
    };

    skip_ws();
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    mpz_class num(digits("numerator"));
    mpz_class den(1);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        const std::size_t den_pos = pos;
        den = mpz_class(digits("denominator"));
        if (den == 0) {
            throw ParseError(den_pos, "zero denominator");
        }
    }
    skip_ws();
    if (pos != text.size()) {
        throw ParseError(pos, "trailing characters in rational");
    }
    Rational q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace katz
