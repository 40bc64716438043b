#include "vlink/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace vlink {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow in multiplication");
    return r;
}

}  // namespace

bool operator<(const Monomial& lhs, const Monomial& rhs) {
    if (lhs.a_exp != rhs.a_exp) return lhs.a_exp < rhs.a_exp;
    return lhs.d_part < rhs.d_part;
}

MultiPoly MultiPoly::mono(int a_exp, std::map<int, int> d_part, std::int64_t coeff) {
    for (auto& [idx, pw] : d_part) {
        if (idx < 1) throw std::invalid_argument("d-variable index must be >= 1");
        if (pw < 1) throw std::invalid_argument("d-variable power must be >= 1");
    }
    MultiPoly p;
    if (coeff != 0) p.terms_.emplace(Monomial{a_exp, std::move(d_part)}, coeff);
    return p;
}

MultiPoly MultiPoly::loop_factor() {
    return a_power(2, -1) + a_power(-2, -1);
}

MultiPoly MultiPoly::neg_a_cubed_pow(int k) {
    return a_power(3 * k, (k % 2 == 0) ? 1 : -1);
}

std::int64_t MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::add_term(const Monomial& m, std::int64_t c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
    MultiPoly r;
    for (const auto& [ml, cl] : lhs.terms_) {
        for (const auto& [mr, cr] : rhs.terms_) {
            Monomial m;
            m.a_exp = ml.a_exp + mr.a_exp;
            m.d_part = ml.d_part;
            for (const auto& [idx, pw] : mr.d_part) m.d_part[idx] += pw;
            r.add_term(m, checked_mul(cl, cr));
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("MultiPoly::pow requires k >= 0");
    MultiPoly r = one();
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

MultiPoly MultiPoly::substitute_d_one() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.add_term(Monomial{m.a_exp, {}}, c);
    return r;
}

MultiPoly MultiPoly::invert_a() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.add_term(Monomial{-m.a_exp, m.d_part}, c);
    return r;
}

std::set<int> MultiPoly::exp_set() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_)
        if (m.d_part.empty()) s.insert(m.a_exp);
    return s;
}

std::set<int> MultiPoly::exp_set_d(int i) const {
    std::set<int> s;
    for (const auto& [m, c] : terms_)
        if (m.d_part.count(i)) s.insert(m.a_exp);
    return s;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << "+";
        first = false;
        os << c << "*A^" << m.a_exp;
        for (const auto& [idx, pw] : m.d_part) os << "*d" << idx << "^" << pw;
    }
    return os.str();
}

std::string MultiPoly::pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool bare = (m.a_exp == 0 && m.d_part.empty());
        if (mag != 1 || bare) {
            os << mag;
            if (!bare) os << "*";
        }
        bool need_sep = false;
        if (m.a_exp != 0) {
            os << "A";
            if (m.a_exp != 1) os << "^" << m.a_exp;
            need_sep = true;
        }
        for (const auto& [idx, pw] : m.d_part) {
            if (need_sep) os << "*";
            os << "d" << idx;
            if (pw != 1) os << "^" << pw;
            need_sep = true;
        }
    }
    return os.str();
}

}  // namespace vlink
