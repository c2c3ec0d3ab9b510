#include "qcm/vec.hpp"

#include <algorithm>
#include <ostream>

#include "qcm/error.hpp"

namespace qcm {

namespace {

void require_same_size(const Vec& a, const Vec& b, const char* op) {
    if (a.size() != b.size()) {
        throw InputError(std::string("dimension mismatch in ") + op + ": " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
}

}  // namespace

Vec Vec::unit(std::size_t n, std::size_t axis) {
    if (axis >= n) throw InputError("unit vector axis out of range");
    Vec v = zero(n);
    v[axis] = 1;
    return v;
}

bool Vec::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r.is_zero(); });
}

Vec& Vec::operator+=(const Vec& rhs) {
    require_same_size(*this, rhs, "vector addition");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& rhs) {
    require_same_size(*this, rhs, "vector subtraction");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

Vec& Vec::operator*=(const Rational& c) {
    for (auto& x : coords_) x *= c;
    return *this;
}

Vec Vec::operator-() const {
    Vec out = *this;
    for (auto& x : out.coords_) x = -x;
    return out;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

std::string Vec::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += coords_[i].str();
    }
    return out + ")";
}

Rational dot(const Vec& a, const Vec& b) {
    require_same_size(a, b, "dot product");
    mpq_class acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
    return Rational(std::move(acc));
}

std::ostream& operator<<(std::ostream& os, const Vec& v) { return os << v.str(); }

}  // namespace qcm
