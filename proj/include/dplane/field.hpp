#pragma once

// Exact base fields: Q, F_p and flattened extensions F_{p^k} = F_p[t]/(m(t)).

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "dplane/error.hpp"

namespace dplane {

class Elem;
class Field;

namespace detail {
/// True when p < 2^20, so products of reduced coefficients can be accumulated lazily in 64 bits.
bool lazy_ok(const Field& f);
/// Reduce 2k-1 lazily accumulated slots (each below 2^63) of a product in F_p[t] to an element of f.
Elem reduce_wide(const Field& f, std::uint64_t* wide);
} // namespace detail

enum class FieldKind { Rationals, Prime, Extension };

using Coeffs = boost::container::small_vector<std::uint64_t, 4>;

namespace detail {
struct FieldData;
}

class Field {
  public:
    Field(); // the rationals

    static Field rationals();
    static Field prime(std::uint64_t p);
    /// `modulus` is monic, ascending coefficients, degree >= 2; irreducibility is verified.
    static Field extension(std::uint64_t p, std::vector<std::uint64_t> modulus);
    /// F_{p^k} with the first irreducible monic modulus in ascending integer encoding.
    static Field canonical_extension(std::uint64_t p, unsigned k);
    /// "Q" | "F<p>" | "F<p>^<k>"
    static Field parse(std::string_view spec);

    FieldKind kind() const;
    bool is_finite() const { return kind() != FieldKind::Rationals; }
    std::uint64_t characteristic() const; // 0 for Q
    unsigned degree() const;              // over the prime field (1 for Q and F_p)
    const std::vector<std::uint64_t>& modulus() const;
    mpz_class order() const; // q; throws for Q
    std::uint64_t size() const; // q when it fits below 2^63
    std::string name() const;
    std::string modulus_string() const;

    Elem zero() const;
    Elem one() const;
    Elem from_int(long v) const;
    Elem from_mpz(const mpz_class& v) const;
    Elem from_rational(const mpq_class& v) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;
    Elem generator() const;
    Elem random(std::mt19937_64& rng) const;
    /// Bijection [0, q) -> field via base-p digits of the index.
    Elem element_at(std::uint64_t index) const;

    bool operator==(const Field& o) const;
    bool same(const Field& o) const { return d_ == o.d_; }
    const detail::FieldData* data() const { return d_.get(); }

  private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
    friend class Elem;
};

class Elem {
  public:
    Elem() = default; // 0 in Q

    const Field& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    Elem operator-() const;
    Elem inv() const;
    Elem pow(const mpz_class& e) const;
    Elem pow(std::uint64_t e) const;
    Elem frobenius() const; // x -> x^p

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    friend Elem operator*(const Elem& a, const Elem& b);
    friend Elem operator/(const Elem& a, const Elem& b);
    Elem& operator+=(const Elem& b) { return *this = *this + b; }
    Elem& operator-=(const Elem& b) { return *this = *this - b; }
    Elem& operator*=(const Elem& b) { return *this = *this * b; }

    bool operator==(const Elem& b) const;
    /// Canonical total order: numeric on Q, base-p integer encoding on finite fields.
    std::strong_ordering compare(const Elem& b) const;

    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const Coeffs& coeffs() const { return std::get<Coeffs>(v_); }
    bool in_prime_field() const;
    std::uint64_t prime_value() const; // requires in_prime_field() on a finite field
    std::string str() const;

  private:
    Elem(Field f, Coeffs c) : f_(std::move(f)), v_(std::move(c)) {}
    Elem(Field f, mpq_class q) : f_(std::move(f)), v_(std::move(q)) {}

    Field f_;
    std::variant<Coeffs, mpq_class> v_ = mpq_class(0);
    friend class Field;
    friend Elem detail::reduce_wide(const Field& f, std::uint64_t* wide);
};

inline bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

bool is_square(const Elem& a);
/// Square root with the canonically smaller representation, or nullopt.
std::optional<Elem> sqrt(const Elem& a);

/// Field homomorphism F_{p^a} -> F_{p^b} determined by the image of the generator.
class Embedding {
  public:
    Embedding() = default;
    Embedding(Field from, Field to, Elem gen_image);
    static Embedding identity(const Field& f);
    /// Canonical embedding (smallest root of the source modulus in the target).
    static Embedding between(const Field& from, const Field& to);

    const Field& from() const { return from_; }
    const Field& to() const { return to_; }
    const Elem& gen_image() const { return gen_; }
    bool is_identity() const { return from_.same(to_) || (from_ == to_ && gen_ == to_.generator()); }
    Elem operator()(const Elem& e) const;
    Embedding then(const Embedding& next) const;

  private:
    Field from_, to_;
    Elem gen_;
};

bool is_probable_prime_u64(std::uint64_t n);

namespace fp {
// Dense polynomials over F_p with coefficients in [0, p), ascending order.
using Vec = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

void trim(Vec& a);
Vec mul(const Vec& a, const Vec& b, std::uint64_t p);
Vec rem(Vec a, const Vec& m, std::uint64_t p);
Vec gcd(Vec a, Vec b, std::uint64_t p);
Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p);
Vec pow_poly(Vec base, const mpz_class& e, const Vec& m, std::uint64_t p);
bool is_irreducible(const Vec& f, std::uint64_t p);
} // namespace fp

} // namespace dplane
