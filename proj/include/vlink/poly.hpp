#ifndef VLINK_POLY_HPP
#define VLINK_POLY_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace vlink {

/// Monomial A^a_exp * d_{i1}^{e1} * d_{i2}^{e2} * ...
/// The d-part maps variable index -> power; powers are always >= 1,
/// an empty map means a pure A-power.
struct Monomial {
    int a_exp = 0;
    std::map<int, int> d_part;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order: A-exponent ascending, then lexicographic d-part.
bool operator<(const Monomial& lhs, const Monomial& rhs);

/// Sparse Laurent polynomial in A with monomials in d_1, d_2, ... over the
/// integers. Coefficients are checked 64-bit: any overflow throws instead of
/// wrapping. Zero coefficients are never stored, so equality of the term maps
/// is equality of polynomials.
class MultiPoly {
public:
    MultiPoly() = default;

    static MultiPoly zero() { return MultiPoly{}; }
    static MultiPoly one() { return mono(0, {}, 1); }
    static MultiPoly mono(int a_exp, std::map<int, int> d_part, std::int64_t coeff);
    /// Pure A-power with coefficient.
    static MultiPoly a_power(int a_exp, std::int64_t coeff = 1) { return mono(a_exp, {}, coeff); }
    /// The loop weight -A^2 - A^{-2}.
    static MultiPoly loop_factor();
    /// (-A^3)^k for any integer k (it is a unit monomial).
    static MultiPoly neg_a_cubed_pow(int k);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
    std::int64_t coeff(const Monomial& m) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
    friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
    friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

    /// Non-negative integer power.
    MultiPoly pow(int k) const;

    /// Erase every d-variable (d_i -> 1), collapsing monomials.
    MultiPoly substitute_d_one() const;
    /// A -> A^{-1}; d-parts unchanged.
    MultiPoly invert_a() const;

    /// A-exponents of the terms with empty d-part.
    std::set<int> exp_set() const;
    /// A-exponents of the terms whose d-part contains d_i.
    std::set<int> exp_set_d(int i) const;

    /// Canonical text form "c*A^k*d1^e1*..." joined by "+"; "0" when zero.
    std::string to_string() const;
    /// Human-readable rendering derived from the canonical form.
    std::string pretty() const;

private:
    std::map<Monomial, std::int64_t> terms_;

    void add_term(const Monomial& m, std::int64_t c);
};

}  // namespace vlink

#endif
