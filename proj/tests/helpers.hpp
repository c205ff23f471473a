#pragma once

// Shared helpers for the unit suites: random objects and brute-force oracles.

#include <random>
#include <vector>

#include "dplane/hunt.hpp"

namespace testing {

using namespace dplane;

inline UniPoly random_poly(const Field& f, int deg, std::mt19937_64& rng)
{
    std::vector<Elem> c;
    for (int i = 0; i < deg; ++i)
        c.push_back(f.random(rng));
    Elem lead = f.random(rng);
    while (lead.is_zero())
        lead = f.random(rng);
    c.push_back(lead);
    return UniPoly(f, std::move(c));
}

inline BiPoly random_bipoly(const Field& f, int zdeg, int xdeg, std::mt19937_64& rng)
{
    std::vector<UniPoly> c;
    for (int i = 0; i <= zdeg; ++i)
        c.push_back(random_poly(f, xdeg, rng));
    return BiPoly(f, std::move(c));
}

/// Determinant by Gaussian elimination over a field.
inline Elem determinant(std::vector<std::vector<Elem>> m, const Field& f)
{
    const std::size_t n = m.size();
    Elem det = f.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero())
            ++piv;
        if (piv == n)
            return f.zero();
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        const Elem inv = m[c][c].inv();
        for (std::size_t r = c + 1; r < n; ++r) {
            const Elem k = m[r][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                m[r][j] -= k * m[c][j];
        }
    }
    return det;
}

/// Resultant straight from the Sylvester matrix.
inline Elem sylvester_resultant(const UniPoly& a, const UniPoly& b)
{
    const Field& f = a.field();
    const std::size_t m = static_cast<std::size_t>(a.degree()), n = static_cast<std::size_t>(b.degree());
    std::vector<std::vector<Elem>> s(m + n, std::vector<Elem>(m + n, f.zero()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i)
            s[r][r + i] = a.coeff(m - i);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i)
            s[n + r][r + i] = b.coeff(n - i);
    return determinant(s, f);
}

inline std::vector<Elem> all_elements(const Field& f)
{
    std::vector<Elem> out;
    for (std::uint64_t i = 0; i < f.size(); ++i)
        out.push_back(f.element_at(i));
    return out;
}

inline PlaneCurve random_curve(const Field& f, unsigned d, std::mt19937_64& rng)
{
    for (;;) {
        TriForm t = random_form(f, d, rng);
        if (!t.is_zero())
            return PlaneCurve(t);
    }
}

inline PlaneCurve random_smooth_curve(const Field& f, unsigned d, std::mt19937_64& rng)
{
    for (;;) {
        PlaneCurve c = random_curve(f, d, rng);
        try {
            if (is_smooth(c).verdict == SmoothVerdict::Smooth)
                return c;
        } catch (const Error&) {
            // non-reduced draws are simply redrawn
        }
    }
}

inline ProjPoint point(const Field& f, long a, long b, long c)
{
    return ProjPoint({f.from_int(a), f.from_int(b), f.from_int(c)});
}

inline TriForm form(const char* text, const Field& f) { return TriForm::parse(text, f); }
inline PlaneCurve curve(const char* text, const Field& f) { return PlaneCurve(TriForm::parse(text, f)); }

template <class F>
ErrorKind error_of(F&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

} // namespace testing
