#pragma once

// Homogeneous forms in x, y, z.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dplane/bipoly.hpp"

namespace dplane {

using Mono = std::array<unsigned, 3>;
using Matrix3 = std::array<std::array<Elem, 3>, 3>;

class TriForm {
  public:
    TriForm() = default;
    /// The zero form of degree d.
    TriForm(Field f, unsigned d);

    static TriForm monomial(const Elem& c, Mono e);
    /// The linear form a*x + b*y + c*z.
    static TriForm linear(const Elem& a, const Elem& b, const Elem& c);
    /// Parse the polynomial grammar; throws SyntaxError, Inhomogeneous, ZeroPolynomial,
    /// CoefficientNotInField.
    static TriForm parse(std::string_view text, const Field& f);

    const Field& field() const { return f_; }
    unsigned degree() const { return d_; }
    bool is_zero() const;
    Elem coeff(const Mono& e) const;
    void set(const Mono& e, const Elem& c);
    /// Nonzero terms in graded lexicographic order, x > y > z, largest first.
    std::vector<std::pair<Mono, Elem>> terms() const;
    /// First nonzero coefficient in term order.
    Elem leading() const;

    TriForm scaled(const Elem& s) const;
    TriForm monic() const { return scaled(leading().inv()); }
    TriForm partial(int var) const;
    /// G(v) = F(M v).
    TriForm substitute(const Matrix3& m) const;
    TriForm map(const Embedding& e) const;
    /// Evaluate at a point whose coordinates live in the field of `e.to()`.
    Elem eval(const std::array<Elem, 3>& p, const Embedding& e) const;
    /// Evaluate at a point over the coefficient field.
    Elem eval(const std::array<Elem, 3>& p) const;

    /// Set variable `one` to 1 and view the result as a polynomial in `main` with
    /// coefficients in the remaining variable.
    BiPoly slice(int one, int main) const;
    /// Homogenise g(x, z) (main variable z, coefficients in x) with y to degree d.
    static TriForm from_slice(const BiPoly& g, unsigned d);

    friend TriForm operator+(const TriForm& a, const TriForm& b);
    friend TriForm operator-(const TriForm& a, const TriForm& b);
    friend TriForm operator*(const TriForm& a, const TriForm& b);
    TriForm operator-() const;
    bool operator==(const TriForm& b) const;
    /// Equal up to a nonzero scalar.
    bool proportional(const TriForm& b) const;

    std::string str() const;

  private:
    std::size_t index(unsigned a, unsigned b) const;
    Field f_;
    unsigned d_ = 0;
    std::vector<Elem> c_; // dense, graded lex order
};

/// Number of monomials of degree d in three variables.
inline std::size_t monomial_count(unsigned d) { return (d + 1) * (d + 2) / 2; }
/// Monomials of degree d in term order.
std::vector<Mono> monomials(unsigned d);

/// Text for one coefficient; `neg` reports whether a leading minus was split off.
std::string format_coeff(const Elem& c, bool& neg);

} // namespace dplane
