#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dplane/field.hpp"

namespace dplane {

/// Dense univariate polynomial over a Field; coefficients ascending, no trailing zeros.
class UniPoly {
  public:
    /// Degree of the zero polynomial. Compare against it; never do arithmetic with it.
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    UniPoly() = default;
    explicit UniPoly(Field f) : f_(std::move(f)) {}
    UniPoly(Field f, std::vector<Elem> c);

    static UniPoly constant(const Elem& c);
    static UniPoly monomial(const Elem& c, unsigned n);
    static UniPoly x(const Field& f) { return monomial(f.one(), 1); }
    /// Ascending integer coefficients mapped into f.
    static UniPoly from_ints(const Field& f, std::initializer_list<long> c);

    const Field& field() const { return f_; }
    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
    Elem lc() const { return c_.empty() ? f_.zero() : c_.back(); }

    UniPoly monic() const;
    UniPoly scaled(const Elem& s) const;
    UniPoly derivative() const;
    UniPoly shifted(unsigned n) const; // multiply by x^n
    Elem eval(const Elem& at) const;
    /// Apply an embedding of the coefficient field.
    UniPoly map(const Embedding& e) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

    bool operator==(const UniPoly& b) const;
    /// Canonical order: by degree, then coefficients from the top.
    std::strong_ordering compare(const UniPoly& b) const;

    std::string str(char var = 'y') const;

  private:
    void trim();
    Field f_;
    std::vector<Elem> c_;
};

struct DivRem {
    UniPoly quot, rem;
};
DivRem divrem(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
/// Exact division; throws Internal when the remainder is nonzero.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero only if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
struct XGcd {
    UniPoly g, s, t; // s*a + t*b = g, g monic
};
XGcd xgcd(const UniPoly& a, const UniPoly& b);
UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod);
UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& mod);

struct FactorEntry {
    UniPoly factor;
    unsigned mult = 0;
};

/// Pairwise coprime square-free monic factors with exponents, sorted by exponent.
/// Product equals f up to the leading constant.
std::vector<FactorEntry> squarefree_decomposition(const UniPoly& f);

struct Factorization {
    Elem unit;
    std::vector<FactorEntry> factors; // monic irreducibles, canonical order
};

/// Complete factorization over a finite field (square-free, distinct-degree, equal-degree).
Factorization uni_factor(const UniPoly& f, std::uint64_t seed);

/// Irreducibility over a finite field (Rabin's test).
bool is_irreducible(const UniPoly& f);

/// Distinct roots in the coefficient field (finite fields), canonical order.
std::vector<Elem> roots(const UniPoly& f, std::uint64_t seed = 0);

/// Rational roots of a polynomial over Q (modular roots, Hensel lifting, rational reconstruction).
std::vector<Elem> rational_roots(const UniPoly& f);

struct PolySqrt {
    Elem c;
    UniPoly h; // monic, f = c * h^2
};
/// Coefficient matching from the top degree; nullopt when f is not c*h^2.
std::optional<PolySqrt> poly_sqrt(const UniPoly& f);

struct AdjoinedRoot {
    Field field;
    Embedding embed; // old field -> new field
    Elem root;       // designated root of m in the new field
};
/// Flattened F_{p^{k deg m}} with canonical modulus, the embedding, and the smallest root of m.
AdjoinedRoot adjoin_root(const Field& field, const UniPoly& m);

} // namespace dplane
