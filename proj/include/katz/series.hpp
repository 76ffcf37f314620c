#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "katz/multi_index.hpp"
#include "katz/rational.hpp"

namespace katz {

/// Element of k[x_1..x_n] / m^(d+1) with an m-adic precision p <= d.
///
/// Coefficients of total degree <= p are trusted; nothing above p is
/// stored. Zero coefficients are never stored, so the term map is a
/// canonical form. Values are immutable once built.
class TruncatedSeries {
public:
    using TermMap = std::map<MultiIndex, Rational, GradedOrder>;

    /// The zero series at full precision.
    TruncatedSeries(std::size_t n_vars, unsigned trunc_order);
    TruncatedSeries(std::size_t n_vars, unsigned trunc_order, unsigned precision);
    /// Canonicalizes: zero coefficients and terms above `precision` are
    /// dropped. Throws DimensionError on exponent tuples of the wrong length.
    TruncatedSeries(std::size_t n_vars, unsigned trunc_order, unsigned precision, TermMap terms);

    static TruncatedSeries constant(std::size_t n_vars, unsigned trunc_order, const Rational& c);
    static TruncatedSeries monomial(std::size_t n_vars, unsigned trunc_order, const MultiIndex& j,
                                    const Rational& c = 1);
    /// x_{i+1} (0-based variable index).
    static TruncatedSeries variable(std::size_t n_vars, unsigned trunc_order, std::size_t i);

    std::size_t n_vars() const noexcept { return n_vars_; }
    unsigned trunc_order() const noexcept { return trunc_order_; }
    unsigned precision() const noexcept { return precision_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Coefficient of x^j; equals the divided derivative (1/j!) d^j f at 0.
    Rational coefficient(const MultiIndex& j) const;

    /// Lower the precision to min(p, precision()).
    TruncatedSeries truncated(unsigned p) const;
    /// Declare the stored terms exact up to degree p (p <= trunc_order).
    /// Only valid when the caller knows the omitted coefficients vanish,
    /// e.g. for a polynomial known in closed form.
    TruncatedSeries assume_precision(unsigned p) const;
    /// Degree-s homogeneous component, same precision.
    TruncatedSeries homogeneous_part(unsigned s) const;

    /// Same precision and same terms.
    bool identical(const TruncatedSeries& other) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a);

    /// Equality at the common precision min(a.precision(), b.precision()).
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::size_t n_vars_;
    unsigned trunc_order_;
    unsigned precision_;
    TermMap terms_;
};

/// Throws DimensionError unless n_vars and trunc_order agree.
void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b);

/// d/dx_{i+1} (0-based i). Precision drops by one.
TruncatedSeries partial(std::size_t i, const TruncatedSeries& f);

Rational eval_at_zero(const TruncatedSeries& f);

/// Image under R_n -> R_{n-1}, x_n -> 0.
TruncatedSeries restrict_last(const TruncatedSeries& f);

/// c * x^j * f. Because x^j is exact, the product is known up to degree
/// precision(f) + |j| (capped at trunc_order).
TruncatedSeries shift(const MultiIndex& j, const TruncatedSeries& f, const Rational& c = 1);

/// Text in the polynomial grammar, terms in GradedOrder: "1 - x1^2 + 1/2*x1*x2".
std::string format(const TruncatedSeries& f);
std::ostream& operator<<(std::ostream& os, const TruncatedSeries& f);

/// Grammar:
///   expr    := term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := rational | var ('^' uint)? | '(' expr ')'
///   rational:= '-'? uint ('/' uint)? ;  var := 'x' uint  (1-based)
/// A leading '-' is also accepted before a variable or parenthesis.
/// The result has precision trunc_order; terms above it are discarded.
/// Throws ParseError carrying the byte offset.
TruncatedSeries parse_series(std::string_view text, std::size_t n_vars, unsigned trunc_order);

} // namespace katz
