#include "katz/series.hpp"

#include <algorithm>
#include <ostream>

#include "katz/errors.hpp"

namespace katz {

TruncatedSeries::TruncatedSeries(std::size_t n_vars, unsigned trunc_order)
    : TruncatedSeries(n_vars, trunc_order, trunc_order)
{
}

TruncatedSeries::TruncatedSeries(std::size_t n_vars, unsigned trunc_order, unsigned precision)
    : n_vars_(n_vars), trunc_order_(trunc_order), precision_(precision)
{
    if (precision > trunc_order) {
        throw PrecisionError("precision " + std::to_string(precision) + " exceeds truncation order " +
                             std::to_string(trunc_order));
    }
}

TruncatedSeries::TruncatedSeries(std::size_t n_vars, unsigned trunc_order, unsigned precision, TermMap terms)
    : TruncatedSeries(n_vars, trunc_order, precision)
{
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() != n_vars) {
            throw DimensionError("exponent tuple " + it->first.to_string() + " does not have " +
                                 std::to_string(n_vars) + " entries");
        }
        if (it->second == 0 || it->first.degree() > precision) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    terms_ = std::move(terms);
}

TruncatedSeries TruncatedSeries::constant(std::size_t n_vars, unsigned trunc_order, const Rational& c)
{
    return monomial(n_vars, trunc_order, MultiIndex(n_vars), c);
}

TruncatedSeries TruncatedSeries::monomial(std::size_t n_vars, unsigned trunc_order, const MultiIndex& j,
                                          const Rational& c)
{
    TermMap t;
    t.emplace(j, c);
    return TruncatedSeries(n_vars, trunc_order, trunc_order, std::move(t));
}

TruncatedSeries TruncatedSeries::variable(std::size_t n_vars, unsigned trunc_order, std::size_t i)
{
    if (i >= n_vars) {
        throw DimensionError("variable index " + std::to_string(i + 1) + " out of range 1.." +
                             std::to_string(n_vars));
    }
    return monomial(n_vars, trunc_order, MultiIndex(n_vars).with(i, 1));
}

Rational TruncatedSeries::coefficient(const MultiIndex& j) const
{
    auto it = terms_.find(j);
    return it == terms_.end() ? Rational(0) : it->second;
}

TruncatedSeries TruncatedSeries::truncated(unsigned p) const
{
    if (p >= precision_) {
        return *this;
    }
    TruncatedSeries r(n_vars_, trunc_order_, p);
    for (const auto& [j, c] : terms_) {
        if (j.degree() > p) {
            break;
        }
        r.terms_.emplace_hint(r.terms_.end(), j, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::assume_precision(unsigned p) const
{
    if (p < precision_) {
        return truncated(p);
    }
    TruncatedSeries r(n_vars_, trunc_order_, p);
    r.terms_ = terms_;
    return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(unsigned s) const
{
    TruncatedSeries r(n_vars_, trunc_order_, precision_);
    for (const auto& [j, c] : terms_) {
        if (j.degree() == s) {
            r.terms_.emplace_hint(r.terms_.end(), j, c);
        }
    }
    return r;
}

bool TruncatedSeries::identical(const TruncatedSeries& other) const
{
    return n_vars_ == other.n_vars_ && trunc_order_ == other.trunc_order_ && precision_ == other.precision_ &&
           terms_ == other.terms_;
}

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.n_vars() != b.n_vars() || a.trunc_order() != b.trunc_order()) {
        throw DimensionError("series shapes differ: (n=" + std::to_string(a.n_vars()) + ", d=" +
                             std::to_string(a.trunc_order()) + ") vs (n=" + std::to_string(b.n_vars()) +
                             ", d=" + std::to_string(b.trunc_order()) + ")");
    }
}

namespace {

TruncatedSeries add_scaled(const TruncatedSeries& a, const TruncatedSeries& b, int sign)
{
    require_compatible(a, b);
    const unsigned p = std::min(a.precision(), b.precision());
    TruncatedSeries::TermMap t;
    for (const auto& [j, c] : a.terms()) {
        if (j.degree() > p) {
            break;
        }
        t.emplace_hint(t.end(), j, c);
    }
    for (const auto& [j, c] : b.terms()) {
        if (j.degree() > p) {
            break;
        }
        auto [it, inserted] = t.try_emplace(j, 0);
        if (sign > 0) {
            it->second += c;
        } else {
            it->second -= c;
        }
    }
    return TruncatedSeries(a.n_vars(), a.trunc_order(), p, std::move(t));
}

} // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return add_scaled(a, b, 1);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return add_scaled(a, b, -1);
}

TruncatedSeries operator-(const TruncatedSeries& a)
{
    TruncatedSeries r = a;
    for (auto& [j, c] : r.terms_) {
        c = -c;
    }
    return r;
}

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a)
{
    TruncatedSeries r(a.n_vars(), a.trunc_order(), a.precision());
    if (c == 0) {
        return r;
    }
    for (const auto& [j, v] : a.terms_) {
        r.terms_.emplace_hint(r.terms_.end(), j, c * v);
    }
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    require_compatible(a, b);
    const unsigned p = std::min(a.precision(), b.precision());
    TruncatedSeries::TermMap t;
    Rational prod;
    // Both maps are sorted by degree, so the inner loop can stop early.
    for (const auto& [ja, ca] : a.terms_) {
        if (ja.degree() > p) {
            break;
        }
        for (const auto& [jb, cb] : b.terms_) {
            if (ja.degree() + jb.degree() > p) {
                break;
            }
            prod = ca * cb;
            auto [it, inserted] = t.try_emplace(ja + jb, 0);
            it->second += prod;
        }
    }
    return TruncatedSeries(a.n_vars(), a.trunc_order(), p, std::move(t));
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.n_vars() != b.n_vars() || a.trunc_order() != b.trunc_order()) {
        return false;
    }
    const unsigned p = std::min(a.precision(), b.precision());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (;;) {
        const bool a_done = ia == a.terms_.end() || ia->first.degree() > p;
        const bool b_done = ib == b.terms_.end() || ib->first.degree() > p;
        if (a_done || b_done) {
            return a_done && b_done;
        }
        if (!(ia->first == ib->first) || ia->second != ib->second) {
            return false;
        }
        ++ia;
        ++ib;
    }
}

TruncatedSeries partial(std::size_t i, const TruncatedSeries& f)
{
    if (i >= f.n_vars()) {
        throw DimensionError("derivative index " + std::to_string(i + 1) + " out of range 1.." +
                             std::to_string(f.n_vars()));
    }
    if (f.precision() == 0) {
        throw PrecisionError("cannot differentiate a series of precision 0");
    }
    TruncatedSeries::TermMap t;
    for (const auto& [j, c] : f.terms()) {
        if (j[i] == 0) {
            continue;
        }
        t.emplace(j.decremented(i), c * j[i]);
    }
    return TruncatedSeries(f.n_vars(), f.trunc_order(), f.precision() - 1, std::move(t));
}

Rational eval_at_zero(const TruncatedSeries& f)
{
    if (f.terms().empty()) {
        return 0;
    }
    const auto& [j, c] = *f.terms().begin();
    return j.is_zero() ? c : Rational(0);
}

TruncatedSeries restrict_last(const TruncatedSeries& f)
{
    if (f.n_vars() == 0) {
        throw DimensionError("cannot restrict a series in zero variables");
    }
    TruncatedSeries::TermMap t;
    for (const auto& [j, c] : f.terms()) {
        if (j[j.size() - 1] == 0) {
            t.emplace_hint(t.end(), j.drop_last(), c);
        }
    }
    return TruncatedSeries(f.n_vars() - 1, f.trunc_order(), f.precision(), std::move(t));
}

TruncatedSeries shift(const MultiIndex& j, const TruncatedSeries& f, const Rational& c)
{
    if (j.size() != f.n_vars()) {
        throw DimensionError("shift exponent " + j.to_string() + " has wrong length");
    }
    const unsigned p = std::min(f.trunc_order(), f.precision() + j.degree());
    TruncatedSeries::TermMap t;
    if (c != 0) {
        for (const auto& [k, v] : f.terms()) {
            if (k.degree() + j.degree() > p) {
                break;
            }
            t.emplace(k + j, c * v);
        }
    }
    return TruncatedSeries(f.n_vars(), f.trunc_order(), p, std::move(t));
}

std::string format(const TruncatedSeries& f)
{
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [j, c] : f.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (j[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += "x" + std::to_string(i + 1);
            if (j[i] > 1) {
                mono += "^" + std::to_string(j[i]);
            }
        }
        // A leading '-' must be followed by a rational in the grammar.
        const bool need_coeff = mono.empty() || mag != 1 || (first && c < 0);
        if (need_coeff) {
            out += mag.get_str();
            if (!mono.empty()) {
                out += "*";
            }
        }
        out += mono;
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& f)
{
    return os << format(f) << " + O(" << f.precision() + 1 << ")";
}

} // namespace katz
