#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dplane/triform.hpp"

namespace dplane {

/// Projective point; the first nonzero coordinate is 1.
class ProjPoint {
  public:
    ProjPoint() = default;
    explicit ProjPoint(std::array<Elem, 3> c);

    const Field& field() const { return c_[0].field(); }
    const std::array<Elem, 3>& coords() const { return c_; }
    const Elem& operator[](std::size_t i) const { return c_[i]; }
    bool operator==(const ProjPoint& o) const;
    std::strong_ordering compare(const ProjPoint& o) const;
    /// x -> x^p on every coordinate.
    ProjPoint frobenius() const;
    std::string str() const;

  private:
    std::array<Elem, 3> c_;
};

/// Galois orbit data of a point over `base`: the orbit size and its smallest member.
struct Orbit {
    unsigned size = 1;
    ProjPoint rep;
};
Orbit orbit_of(const ProjPoint& p, const Field& base);

/// Whether two representatives, possibly over different extensions, lie in the same orbit over `base`.
bool same_orbit(const ProjPoint& a, const ProjPoint& b, const Field& base);

/// Galois orbit of geometric points; the representative is the smallest conjugate.
struct ClosedPoint {
    unsigned residue_degree = 1;
    ProjPoint rep;
    Embedding embed;     // base field -> field of rep
    UniPoly factor;      // irreducible resultant factor in good coordinates (empty when unused)
    Elem fiber;          // lifted fiber coordinate in good coordinates
    unsigned multiplicity = 0;
};

class CoordChange {
  public:
    CoordChange() = default;
    /// Throws InvalidArgument when m is singular.
    explicit CoordChange(const Matrix3& m);
    static CoordChange identity(const Field& f);
    static CoordChange random(const Field& f, std::mt19937_64& rng);

    const Matrix3& matrix() const { return m_; }
    const Matrix3& inverse_matrix() const { return inv_; }
    CoordChange inverse() const;
    /// M v with the entries pushed through e.
    std::array<Elem, 3> apply(const std::array<Elem, 3>& v, const Embedding& e) const;
    std::string str() const;

  private:
    Matrix3 m_, inv_;
};

enum class SmoothVerdict { Unknown, Smooth, Singular };

struct Smoothness {
    SmoothVerdict verdict = SmoothVerdict::Unknown;
    std::vector<ClosedPoint> singular; // over Q: rational singular points only
    bool rational_only = false;
};

class PlaneCurve {
  public:
    PlaneCurve() = default;
    /// Throws ZeroPolynomial for the zero form.
    explicit PlaneCurve(TriForm f);

    const TriForm& form() const { return f_; }
    unsigned degree() const { return f_.degree(); }
    const Field& field() const { return f_.field(); }
    /// Projective equality (forms equal up to a scalar).
    bool operator==(const PlaneCurve& o) const { return f_.proportional(o.f_); }
    std::string str() const { return f_.str(); }

  private:
    friend const Smoothness& is_smooth(const PlaneCurve& c);
    struct Cache;
    TriForm f_;
    std::shared_ptr<Cache> cache_;
};

/// Jacobian criterion; computed once per curve and cached. Throws CharacteristicDividesDegree
/// and NonReduced.
const Smoothness& is_smooth(const PlaneCurve& c);

/// Evaluate the curve's form at a point over an extension of its field.
Elem eval_at(const TriForm& f, const ProjPoint& p);
/// Canonical embedding of `from` into `to`, cached.
Embedding embed_into(const Field& from, const Field& to);

/// Line F_x(P) x + F_y(P) y + F_z(P) z, over the field of P.
PlaneCurve tangent_line(const PlaneCurve& c, const ProjPoint& p);

/// Curve with form F o T^-1, so that points move as P -> T P.
PlaneCurve apply_change(const PlaneCurve& c, const CoordChange& t);
ProjPoint apply_change(const ProjPoint& p, const CoordChange& t);

struct SampledPoint {
    ProjPoint point;
    unsigned residue_degree = 1;
};

/// Random point of the curve on a random line through (0:0:1), not on `avoid`.
SampledPoint sample_point(const PlaneCurve& c, const PlaneCurve* avoid, std::uint64_t seed,
                          unsigned attempts = 64);

} // namespace dplane
