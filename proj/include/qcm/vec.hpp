#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qcm/rational.hpp"

namespace qcm {

/// Element of the ordered space Q^n. Arithmetic between vectors of different
/// length throws InputError.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Vec(std::initializer_list<Rational> coords) : coords_(coords) {}

    static Vec zero(std::size_t n) { return Vec(std::vector<Rational>(n)); }
    static Vec unit(std::size_t n, std::size_t axis);

    std::size_t size() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    std::span<const Rational> coords() const { return coords_; }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    bool is_zero() const;

    Vec& operator+=(const Vec& rhs);
    Vec& operator-=(const Vec& rhs);
    Vec& operator*=(const Rational& c);

    friend Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
    friend Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
    friend Vec operator*(const Rational& c, Vec v) { return v *= c; }
    friend Vec operator*(Vec v, const Rational& c) { return v *= c; }
    Vec operator-() const;

    friend bool operator==(const Vec&, const Vec&) = default;
    /// Lexicographic; used only to give sets of vectors a canonical order.
    friend bool lex_less(const Vec& a, const Vec& b);

    /// "(1, 4, 3/2)"
    std::string str() const;

private:
    std::vector<Rational> coords_;
};

Rational dot(const Vec& a, const Vec& b);

std::ostream& operator<<(std::ostream& os, const Vec& v);

}  // namespace qcm
