#pragma once

// Polynomials in a main variable z whose coefficients are univariate polynomials in x.

#include <vector>

#include "dplane/unipoly.hpp"

namespace dplane {

class BiPoly {
  public:
    BiPoly() = default;
    explicit BiPoly(Field f) : f_(std::move(f)) {}
    BiPoly(Field f, std::vector<UniPoly> c);

    const Field& field() const { return f_; }
    int degree() const { return c_.empty() ? UniPoly::kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<UniPoly>& coeffs() const { return c_; }
    UniPoly coeff(std::size_t i) const { return i < c_.size() ? c_[i] : UniPoly(f_); }
    const UniPoly& lc() const { return c_.back(); }
    /// Largest x-degree among the coefficients.
    int x_degree() const;

    BiPoly scaled(const UniPoly& s) const;
    BiPoly shifted(unsigned n) const; // times z^n
    /// Substitute x = a, leaving a polynomial in z.
    UniPoly eval_x(const Elem& a) const;
    BiPoly map(const Embedding& e) const;
    /// Reduce every coefficient modulo h.
    BiPoly reduced(const UniPoly& h) const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    bool operator==(const BiPoly& b) const { return c_ == b.c_; }

  private:
    void trim();
    Field f_;
    std::vector<UniPoly> c_;
};

/// Total degree in both variables.
unsigned total_degree(const BiPoly& g);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
BiPoly prem(const BiPoly& a, const BiPoly& b);

/// Res_z(a, b) by the subresultant remainder sequence; BothConstantInVariable when neither depends on z.
UniPoly resultant(const BiPoly& a, const BiPoly& b);

/// Resultant of univariate polynomials over a field.
Elem resultant(const UniPoly& a, const UniPoly& b);

/// Gcd over K(x)[z] scaled into K[x][z]: x-primitive, and monic in z when its leading coefficient is constant.
BiPoly gcd_z(const BiPoly& a, const BiPoly& b);

/// One branch of a dynamic-evaluation gcd: over K[x]/(modulus), the gcd in z is `g`
/// (leading coefficient invertible, zero when all inputs vanish there).
struct SplitGcd {
    UniPoly modulus;
    BiPoly g;
};

/// Gcd in z of several polynomials over K[x]/(h), h square-free. Each zero divisor met while
/// normalising a leading coefficient splits h; the moduli of the result multiply to h.
std::vector<SplitGcd> split_gcd(const std::vector<BiPoly>& polys, const UniPoly& h);

} // namespace dplane
