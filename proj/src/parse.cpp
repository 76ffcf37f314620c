// Recursive-descent reader for the polynomial grammar (see series.hpp).

#include <cctype>
#include <limits>

#include "katz/errors.hpp"
#include "katz/series.hpp"

namespace katz {

namespace {

class SeriesParser {
public:
    SeriesParser(std::string_view text, std::size_t n_vars, unsigned trunc_order)
        : text_(text), n_vars_(n_vars), d_(trunc_order)
    {
    }

    TruncatedSeries parse()
    {
        TruncatedSeries result = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        }
        return result;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t n_vars_;
    unsigned d_;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    std::string digits(const char* what)
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) {
            throw ParseError(pos_, std::string("expected ") + what);
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    // Saturates; anything above the truncation order behaves the same.
    unsigned long small_uint(const char* what)
    {
        const std::string s = digits(what);
        unsigned long v = 0;
        for (char c : s) {
            if (v > std::numeric_limits<unsigned>::max()) {
                break;
            }
            v = v * 10 + static_cast<unsigned long>(c - '0');
        }
        return v;
    }

    TruncatedSeries expr()
    {
        TruncatedSeries acc = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                acc = acc + term();
            } else if (peek('-')) {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    TruncatedSeries term()
    {
        TruncatedSeries acc = factor();
        while (peek('*')) {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    TruncatedSeries factor()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError(pos_, "unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            TruncatedSeries inner = expr();
            if (!peek(')')) {
                throw ParseError(pos_, "expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (c == 'x') {
            const std::size_t var_pos = pos_;
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw ParseError(pos_, "expected variable index after 'x'");
            }
            const unsigned long idx = small_uint("variable index");
            if (idx == 0 || idx > n_vars_) {
                throw ParseError(var_pos, "variable x" + std::to_string(idx) + " out of range x1..x" +
                                              std::to_string(n_vars_));
            }
            unsigned long exponent = 1;
            if (peek('^')) {
                ++pos_;
                exponent = small_uint("exponent");
            }
            if (exponent > d_) {
                return TruncatedSeries(n_vars_, d_);
            }
            return TruncatedSeries::monomial(
                n_vars_, d_, MultiIndex(n_vars_).with(idx - 1, static_cast<MultiIndex::value_type>(exponent)));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(digits("number"));
            mpz_class den(1);
            if (peek('/')) {
                ++pos_;
                skip_ws();
                const std::size_t den_pos = pos_;
                den = mpz_class(digits("denominator"));
                if (den == 0) {
                    throw ParseError(den_pos, "zero denominator");
                }
            }
            Rational q(num, den);
            q.canonicalize();
            return TruncatedSeries::constant(n_vars_, d_, q);
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }
};

} // namespace

TruncatedSeries parse_series(std::string_view text, std::size_t n_vars, unsigned trunc_order)
{
    return SeriesParser(text, n_vars, trunc_order).parse();
}

} // namespace katz
