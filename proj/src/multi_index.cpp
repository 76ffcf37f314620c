#include "katz/multi_index.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>

namespace katz {

MultiIndex::MultiIndex(std::initializer_list<value_type> exps)
    : exps_(exps.begin(), exps.end()), degree_(std::accumulate(exps.begin(), exps.end(), 0u))
{
}

MultiIndex::MultiIndex(const std::vector<value_type>& exps)
    : exps_(exps.begin(), exps.end()), degree_(std::accumulate(exps.begin(), exps.end(), 0u))
{
}

MultiIndex MultiIndex::with(std::size_t i, value_type v) const
{
    MultiIndex r = *this;
    r.degree_ = r.degree_ - r.exps_[i] + v;
    r.exps_[i] = v;
    return r;
}

MultiIndex MultiIndex::incremented(std::size_t i, value_type by) const
{
    MultiIndex r = *this;
    r.exps_[i] += by;
    r.degree_ += by;
    return r;
}

MultiIndex MultiIndex::decremented(std::size_t i, value_type by) const
{
    assert(exps_[i] >= by);
    MultiIndex r = *this;
    r.exps_[i] -= by;
    r.degree_ -= by;
    return r;
}

MultiIndex MultiIndex::drop_last() const
{
    MultiIndex r = *this;
    r.degree_ -= r.exps_.back();
    r.exps_.pop_back();
    return r;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
{
    assert(a.size() == b.size());
    MultiIndex r = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
        r.exps_[i] += b.exps_[i];
    }
    r.degree_ += b.degree_;
    return r;
}

std::string MultiIndex::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(exps_[i]);
    }
    return s + ")";
}

bool GradedOrder::operator()(const MultiIndex& a, const MultiIndex& b) const noexcept
{
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree();
    }
    // Larger leading exponents come first.
    return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                        b.exponents().begin(), b.exponents().end(),
                                        std::greater<>{});
}

namespace {

void fill_degree(std::size_t n, unsigned remaining, std::size_t slot, std::vector<MultiIndex::value_type>& cur,
                 std::vector<MultiIndex>& out)
{
    if (slot + 1 == n) {
        cur[slot] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        cur[slot] = e;
        fill_degree(n, remaining - e, slot + 1, cur, out);
    }
}

} // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned s)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (s == 0) {
            out.emplace_back();
        }
        return out;
    }
    std::vector<MultiIndex::value_type> cur(n, 0);
    fill_degree(n, s, 0, cur, out);
    return out;
}

std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d)
{
    std::vector<MultiIndex> out;
    for (unsigned s = 0; s <= d; ++s) {
        auto layer = monomials_of_degree(n, s);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace katz
