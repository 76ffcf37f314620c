#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace katz {

/// Exponent tuple (j_1, ..., j_n) with its total degree cached.
class MultiIndex {
public:
    using value_type = std::uint32_t;
    using storage_type = boost::container::small_vector<value_type, 4>;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
    MultiIndex(std::initializer_list<value_type> exps);
    explicit MultiIndex(const std::vector<value_type>& exps);

    std::size_t size() const noexcept { return exps_.size(); }
    value_type operator[](std::size_t i) const { return exps_[i]; }
    unsigned degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return degree_ == 0; }

    const storage_type& exponents() const noexcept { return exps_; }

    MultiIndex with(std::size_t i, value_type v) const;
    MultiIndex incremented(std::size_t i, value_type by = 1) const;
    // Requires (*this)[i] >= by.
    MultiIndex decremented(std::size_t i, value_type by = 1) const;
    MultiIndex drop_last() const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept
    {
        return a.degree_ == b.degree_ && a.exps_ == b.exps_;
    }

    std::string to_string() const;

private:
    storage_type exps_;
    unsigned degree_ = 0;
};

/// Graded order used for storage, printing and certificate search: total
/// degree ascending, then x1-heavier monomials first (x1 before x2, x1^2
/// before x1*x2).
struct GradedOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept;
};

/// All exponent tuples of length n with total degree exactly s, in GradedOrder.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned s);

/// All exponent tuples of length n with total degree <= d, in GradedOrder.
std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d);

} // namespace katz
