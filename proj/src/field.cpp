#include "dplane/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

namespace dplane {

std::string_view error_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::Inhomogeneous: return "Inhomogeneous";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::CoefficientNotInField: return "CoefficientNotInField";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::BothConstantInVariable: return "BothConstantInVariable";
    case ErrorKind::FieldNotFinite: return "FieldNotFinite";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::RationalsUnsupported: return "RationalsUnsupported";
    case ErrorKind::CharacteristicDividesDegree: return "CharacteristicDividesDegree";
    case ErrorKind::BadCharacteristic: return "BadCharacteristic";
    case ErrorKind::NonReduced: return "NonReduced";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::ExhaustedAttempts: return "ExhaustedAttempts";
    case ErrorKind::CommonComponent: return "CommonComponent";
    case ErrorKind::GoodPositionFailed: return "GoodPositionFailed";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::BNotSmooth: return "BNotSmooth";
    case ErrorKind::CNotSmooth: return "CNotSmooth";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NoRationalPoint: return "NoRationalPoint";
    case ErrorKind::ZeroSamplesPossible: return "ZeroSamplesPossible";
    case ErrorKind::OddS: return "OddS";
    case ErrorKind::RootsOfUnityMissing: return "RootsOfUnityMissing";
    case ErrorKind::NotAConic: return "NotAConic";
    case ErrorKind::ExhaustedTries: return "ExhaustedTries";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DifferentBranchCurves: return "DifferentBranchCurves";
    case ErrorKind::TransitivityViolation: return "TransitivityViolation";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

int Error::exit_code() const noexcept
{
    switch (kind_) {
    case ErrorKind::SyntaxError:
    case ErrorKind::Inhomogeneous:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::CoefficientNotInField:
    case ErrorKind::InvalidArgument:
    case ErrorKind::FieldMismatch:
        return 2;
    case ErrorKind::TransitivityViolation:
    case ErrorKind::OracleDisagreement:
    case ErrorKind::Internal:
        return 4;
    default:
        return 3;
    }
}

namespace detail {
struct FieldData {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;
    unsigned k = 1;
    std::vector<std::uint64_t> modulus; // monic, size k+1, extension only
};
} // namespace detail

// ---------------------------------------------------------------- fp helpers

namespace fp {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p)
{
    // extended Euclid on signed 128-bit values
    __int128 t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        fail(ErrorKind::Internal, "invmod: not invertible");
    if (t < 0)
        t += p;
    return static_cast<std::uint64_t>(t);
}

void trim(Vec& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Vec mul(const Vec& a, const Vec& b, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            if (acc[i + j] >> 126)
                acc[i + j] %= p;
        }
    }
    Vec r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        r[i] = static_cast<std::uint64_t>(acc[i] % p);
    trim(r);
    return r;
}

Vec rem(Vec a, const Vec& m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    if (a.size() < m.size())
        return a;
    const std::uint64_t inv_lc = invmod(m.back(), p);
    for (std::size_t i = a.size(); i-- > dm;) {
        std::uint64_t c = a[i];
        if (!c)
            continue;
        c = mulmod(c, inv_lc, p);
        for (std::size_t j = 0; j <= dm; ++j)
            a[i - dm + j] = (a[i - dm + j] + p - mulmod(c, m[j], p)) % p;
    }
    a.resize(dm);
    trim(a);
    return a;
}

Vec gcd(Vec a, Vec b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod(a.back(), p);
        for (auto& c : a)
            c = mulmod(c, inv, p);
    }
    return a;
}

Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) { return rem(mul(a, b, p), m, p); }

Vec pow_poly(Vec base, const mpz_class& e, const Vec& m, std::uint64_t p)
{
    Vec r{1};
    r = rem(r, m, p);
    base = rem(base, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod_poly(r, r, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod_poly(r, base, m, p);
    }
    return r;
}

static std::vector<unsigned> prime_divisors(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool is_irreducible(const Vec& f0, std::uint64_t p)
{
    Vec f = f0;
    trim(f);
    if (f.size() < 2)
        return false;
    const unsigned n = static_cast<unsigned>(f.size() - 1);
    if (n == 1)
        return true;
    // make monic
    std::uint64_t inv = invmod(f.back(), p);
    for (auto& c : f)
        c = mulmod(c, inv, p);
    const Vec x{0, 1};
    std::vector<Vec> frob(n + 1);
    frob[0] = rem(x, f, p);
    const mpz_class pe(static_cast<unsigned long>(p));
    for (unsigned i = 1; i <= n; ++i)
        frob[i] = pow_poly(frob[i - 1], pe, f, p);
    if (frob[n] != frob[0])
        return false;
    for (unsigned r : prime_divisors(n)) {
        Vec h = frob[n / r];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        Vec g = gcd(f, h, p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

} // namespace fp

// ---------------------------------------------------------------- primality

bool is_probable_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0)
            return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these bases are deterministic for all n < 2^64
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = fp::powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = fp::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- Field

namespace {

constexpr std::uint64_t kMaxPrime = 1ULL << 62;

std::shared_ptr<const detail::FieldData> rationals_data()
{
    static const auto q = std::make_shared<const detail::FieldData>();
    return q;
}

// Interning keeps repeated requests for the same field on one shared object, which makes
// Field::same() the common fast path; results are identical with or without it.
std::shared_ptr<const detail::FieldData> intern(detail::FieldData d)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::shared_ptr<const detail::FieldData>>
        table;
    std::lock_guard lock(mu);
    auto key = std::make_pair(d.p, d.kind == FieldKind::Prime ? std::vector<std::uint64_t>{} : d.modulus);
    auto it = table.find(key);
    if (it != table.end())
        return it->second;
    auto sp = std::make_shared<const detail::FieldData>(std::move(d));
    table.emplace(std::move(key), sp);
    return sp;
}

std::shared_ptr<const detail::FieldData> canonical_cache(std::uint64_t p, unsigned k,
                                                         std::shared_ptr<const detail::FieldData> insert = {})
{
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const detail::FieldData>> table;
    std::lock_guard lock(mu);
    auto key = std::make_pair(p, k);
    if (insert) {
        table.emplace(key, insert);
        return insert;
    }
    auto it = table.find(key);
    return it == table.end() ? nullptr : it->second;
}

} // namespace

Field::Field() : d_(rationals_data()) {}

Field Field::rationals() { return Field(); }

Field Field::prime(std::uint64_t p)
{
    if (p >= kMaxPrime)
        fail(ErrorKind::InvalidArgument, "characteristic must be below 2^62");
    if (!is_probable_prime_u64(p))
        fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    detail::FieldData d;
    d.kind = FieldKind::Prime;
    d.p = p;
    d.k = 1;
    return Field(intern(std::move(d)));
}

Field Field::extension(std::uint64_t p, std::vector<std::uint64_t> modulus)
{
    Field base = prime(p);
    for (auto& c : modulus)
        c %= p;
    fp::trim(modulus);
    if (modulus.size() < 3 || modulus.back() != 1)
        fail(ErrorKind::InvalidArgument, "extension modulus must be monic of degree >= 2");
    if (!fp::is_irreducible(modulus, p))
        fail(ErrorKind::NotIrreducible, "extension modulus is reducible over F_" + std::to_string(p));
    detail::FieldData d;
    d.kind = FieldKind::Extension;
    d.p = p;
    d.k = static_cast<unsigned>(modulus.size() - 1);
    d.modulus = std::move(modulus);
    return Field(intern(std::move(d)));
}

Field Field::canonical_extension(std::uint64_t p, unsigned k)
{
    if (k == 0)
        fail(ErrorKind::InvalidArgument, "extension degree must be positive");
    if (k == 1)
        return prime(p);
    if (auto hit = canonical_cache(p, k))
        return Field(hit);
    prime(p); // validates p
    // Enumerate monic x^k + c_{k-1} x^{k-1} + ... + c_0 by the integer sum c_i p^i, skipping c_0 = 0.
    std::vector<std::uint64_t> m(k + 1, 0);
    m[k] = 1;
    for (;;) {
        std::size_t i = 0;
        while (i < k) {
            if (++m[i] < p)
                break;
            m[i] = 0;
            ++i;
        }
        if (i == k)
            fail(ErrorKind::Internal, "no irreducible polynomial found");
        if (m[0] == 0)
            continue;
        if (fp::is_irreducible(m, p)) {
            detail::FieldData d;
            d.kind = FieldKind::Extension;
            d.p = p;
            d.k = k;
            d.modulus = m;
            return Field(canonical_cache(p, k, intern(std::move(d))));
        }
    }
}

Field Field::parse(std::string_view spec)
{
    auto trim_ws = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    spec = trim_ws(spec);
    if (spec == "Q")
        return rationals();
    if (spec.size() < 2 || spec[0] != 'F')
        fail(ErrorKind::InvalidArgument, "field spec must be Q, F<p> or F<p>^<k>: '" + std::string(spec) + "'");
    auto caret = spec.find('^');
    auto pstr = spec.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(pstr.data(), pstr.data() + pstr.size(), p);
    if (ec != std::errc() || ptr != pstr.data() + pstr.size())
        fail(ErrorKind::InvalidArgument, "bad characteristic in field spec '" + std::string(spec) + "'");
    unsigned k = 1;
    if (caret != std::string_view::npos) {
        auto kstr = spec.substr(caret + 1);
        auto [kp, kec] = std::from_chars(kstr.data(), kstr.data() + kstr.size(), k);
        if (kec != std::errc() || kp != kstr.data() + kstr.size() || k == 0)
            fail(ErrorKind::InvalidArgument, "bad extension degree in field spec '" + std::string(spec) + "'");
    }
    return canonical_extension(p, k);
}

FieldKind Field::kind() const { return d_->kind; }
std::uint64_t Field::characteristic() const { return d_->p; }
unsigned Field::degree() const { return d_->k; }
const std::vector<std::uint64_t>& Field::modulus() const { return d_->modulus; }

mpz_class Field::order() const
{
    if (!is_finite())
        fail(ErrorKind::FieldNotFinite, "Q has no finite order");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), d_->p, d_->k);
    return q;
}

std::uint64_t Field::size() const
{
    mpz_class q = order();
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 62)
        fail(ErrorKind::FieldTooLarge, "field order does not fit in 62 bits");
    return q.get_ui();
}

std::string Field::name() const
{
    switch (d_->kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "F" + std::to_string(d_->p);
    case FieldKind::Extension: return "F" + std::to_string(d_->p) + "^" + std::to_string(d_->k);
    }
    return "?";
}

std::string Field::modulus_string() const
{
    if (d_->kind != FieldKind::Extension)
        return "";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = d_->modulus.size(); i-- > 0;) {
        std::uint64_t c = d_->modulus[i];
        if (!c)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c != 1)
            os << c;
        if (i > 0) {
            if (c != 1)
                os << "*";
            os << "a";
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

Elem Field::zero() const
{
    if (!is_finite())
        return Elem(*this, mpq_class(0));
    return Elem(*this, Coeffs(d_->k, 0));
}

Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long v) const { return from_mpz(mpz_class(v)); }

Elem Field::from_mpz(const mpz_class& v) const
{
    if (!is_finite())
        return Elem(*this, mpq_class(v));
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), d_->p);
    Coeffs c(d_->k, 0);
    c[0] = r.get_ui();
    return Elem(*this, std::move(c));
}

Elem Field::from_rational(const mpq_class& v) const
{
    if (!is_finite())
        return Elem(*this, v);
    if (mpz_divisible_ui_p(v.get_den_mpz_t(), d_->p))
        fail(ErrorKind::CoefficientNotInField, "denominator divisible by the characteristic");
    return from_mpz(v.get_num()) / from_mpz(v.get_den());
}

Elem Field::from_coeffs(const std::vector<std::uint64_t>& in) const
{
    if (!is_finite())
        fail(ErrorKind::InvalidArgument, "from_coeffs on Q");
    std::vector<std::uint64_t> v = in;
    for (auto& c : v)
        c %= d_->p;
    if (d_->kind == FieldKind::Extension)
        v = fp::rem(std::move(v), d_->modulus, d_->p);
    else
        fp::trim(v);
    Coeffs c(d_->k, 0);
    for (std::size_t i = 0; i < v.size() && i < d_->k; ++i)
        c[i] = v[i];
    return Elem(*this, std::move(c));
}

Elem Field::generator() const
{
    if (d_->kind != FieldKind::Extension)
        return one();
    Coeffs c(d_->k, 0);
    c[1] = 1;
    return Elem(*this, std::move(c));
}

Elem Field::random(std::mt19937_64& rng) const
{
    if (!is_finite()) {
        // small random rational numerators; only used for coordinate changes and combinations
        long v = static_cast<long>(rng() % 7) - 3;
        return from_int(v);
    }
    Coeffs c(d_->k, 0);
    for (auto& x : c)
        x = rng() % d_->p;
    return Elem(*this, std::move(c));
}

Elem Field::element_at(std::uint64_t index) const
{
    if (!is_finite())
        return from_int(static_cast<long>(index));
    Coeffs c(d_->k, 0);
    for (unsigned i = 0; i < d_->k; ++i) {
        c[i] = index % d_->p;
        index /= d_->p;
    }
    return Elem(*this, std::move(c));
}

bool Field::operator==(const Field& o) const
{
    if (d_ == o.d_)
        return true;
    return d_->kind == o.d_->kind && d_->p == o.d_->p && d_->k == o.d_->k && d_->modulus == o.d_->modulus;
}

// ---------------------------------------------------------------- Elem

namespace {
void reduce_wide_slots(std::uint64_t* r, const detail::FieldData& d);
}

bool detail::lazy_ok(const Field& f) { return f.is_finite() && f.characteristic() < (1ULL << 20); }

Elem detail::reduce_wide(const Field& f, std::uint64_t* wide)
{
    const auto& d = *f.data();
    if (d.kind == FieldKind::Prime) {
        Coeffs c(1);
        c[0] = wide[0] % d.p;
        return Elem(f, std::move(c));
    }
    reduce_wide_slots(wide, d);
    return Elem(f, Coeffs(wide, wide + d.k));
}

namespace {

void check_same(const Elem& a, const Elem& b)
{
    if (!a.field().same(b.field()) && !(a.field() == b.field()))
        fail(ErrorKind::FieldMismatch, "operands in " + a.field().name() + " and " + b.field().name());
}

std::pair<fp::Vec, fp::Vec> fp_divrem(fp::Vec a, const fp::Vec& b, std::uint64_t p)
{
    fp::trim(a);
    if (a.size() < b.size())
        return {fp::Vec{}, a};
    const std::size_t db = b.size() - 1;
    fp::Vec q(a.size() - db, 0);
    const std::uint64_t inv_lc = fp::invmod(b.back(), p);
    for (std::size_t i = a.size(); i-- > db;) {
        std::uint64_t c = fp::mulmod(a[i], inv_lc, p);
        q[i - db] = c;
        if (!c)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            a[i - db + j] = (a[i - db + j] + p - fp::mulmod(c, b[j], p)) % p;
    }
    a.resize(db);
    fp::trim(a);
    fp::trim(q);
    return {q, a};
}

void reduce_wide_slots(std::uint64_t* r, const detail::FieldData& d)
{
    const unsigned k = d.k;
    const std::uint64_t p = d.p;
    const auto& m = d.modulus;
    for (unsigned i = 0; i < 2 * k - 1; ++i)
        r[i] %= p;
    for (unsigned i = 2 * k - 1; i-- > k;) {
        const std::uint64_t c = r[i] % p;
        if (!c)
            continue;
        for (unsigned j = 0; j < k; ++j)
            if (m[j])
                r[i - k + j] += c * (p - m[j]);
    }
    for (unsigned j = 0; j < k; ++j)
        r[j] %= p;
}

Coeffs ext_mul(const Coeffs& a, const Coeffs& b, const detail::FieldData& d)
{
    const unsigned k = d.k;
    const std::uint64_t p = d.p;
    if (p < (1ULL << 20)) {
        std::uint64_t stack[128];
        std::vector<std::uint64_t> heap;
        std::uint64_t* r = stack;
        if (2 * k - 1 > 128) {
            heap.assign(2 * k - 1, 0);
            r = heap.data();
        } else {
            std::fill(r, r + 2 * k - 1, 0);
        }
        for (unsigned i = 0; i < k; ++i) {
            const std::uint64_t ai = a[i];
            if (!ai)
                continue;
            for (unsigned j = 0; j < k; ++j)
                r[i + j] += ai * b[j];
        }
        reduce_wide_slots(r, d);
        return Coeffs(r, r + k);
    }
    std::vector<unsigned __int128> acc(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (!a[i])
            continue;
        for (unsigned j = 0; j < k; ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            if (acc[i + j] >> 126)
                acc[i + j] %= p;
        }
    }
    std::vector<std::uint64_t> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        r[i] = static_cast<std::uint64_t>(acc[i] % p);
    const auto& m = d.modulus;
    for (std::size_t i = r.size(); i-- > k;) {
        std::uint64_t c = r[i];
        if (!c)
            continue;
        for (unsigned j = 0; j < k; ++j)
            r[i - k + j] = (r[i - k + j] + p - fp::mulmod(c, m[j], p)) % p;
        r[i] = 0;
    }
    Coeffs out(k);
    for (unsigned i = 0; i < k; ++i)
        out[i] = r[i];
    return out;
}

} // namespace

bool Elem::is_zero() const
{
    if (auto q = std::get_if<mpq_class>(&v_))
        return sgn(*q) == 0;
    for (auto c : std::get<Coeffs>(v_))
        if (c)
            return false;
    return true;
}

bool Elem::is_one() const
{
    if (auto q = std::get_if<mpq_class>(&v_))
        return *q == 1;
    const auto& c = std::get<Coeffs>(v_);
    if (c[0] != 1)
        return false;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i])
            return false;
    return true;
}

Elem Elem::operator-() const
{
    if (auto q = std::get_if<mpq_class>(&v_))
        return Elem(f_, mpq_class(-*q));
    const std::uint64_t p = f_.d_->p;
    Coeffs c = std::get<Coeffs>(v_);
    for (auto& x : c)
        x = x ? p - x : 0;
    return Elem(f_, std::move(c));
}

Elem operator+(const Elem& a, const Elem& b)
{
    check_same(a, b);
    if (auto q = std::get_if<mpq_class>(&a.v_))
        return Elem(a.f_, mpq_class(*q + b.rational()));
    const std::uint64_t p = a.f_.characteristic();
    Coeffs c = a.coeffs();
    const auto& bc = b.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint64_t s = c[i] + bc[i];
        c[i] = s >= p ? s - p : s;
    }
    return Elem(a.f_, std::move(c));
}

Elem operator-(const Elem& a, const Elem& b)
{
    check_same(a, b);
    if (auto q = std::get_if<mpq_class>(&a.v_))
        return Elem(a.f_, mpq_class(*q - b.rational()));
    const std::uint64_t p = a.f_.characteristic();
    Coeffs c = a.coeffs();
    const auto& bc = b.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = c[i] >= bc[i] ? c[i] - bc[i] : c[i] + p - bc[i];
    return Elem(a.f_, std::move(c));
}

Elem operator*(const Elem& a, const Elem& b)
{
    check_same(a, b);
    if (auto q = std::get_if<mpq_class>(&a.v_))
        return Elem(a.f_, mpq_class(*q * b.rational()));
    const auto& d = *a.f_.data();
    if (d.kind == FieldKind::Prime) {
        Coeffs c(1);
        c[0] = fp::mulmod(a.coeffs()[0], b.coeffs()[0], d.p);
        return Elem(a.f_, std::move(c));
    }
    return Elem(a.f_, ext_mul(a.coeffs(), b.coeffs(), d));
}

Elem Elem::inv() const
{
    if (is_zero())
        fail(ErrorKind::Internal, "division by zero in " + f_.name());
    if (auto q = std::get_if<mpq_class>(&v_))
        return Elem(f_, mpq_class(1 / *q));
    const auto& d = *f_.d_;
    if (d.kind == FieldKind::Prime) {
        Coeffs c(1);
        c[0] = fp::invmod(coeffs()[0], d.p);
        return Elem(f_, std::move(c));
    }
    // extended Euclid in F_p[t]: track u with u*a = r (mod m)
    const std::uint64_t p = d.p;
    fp::Vec r0 = d.modulus, r1(coeffs().begin(), coeffs().end());
    fp::trim(r1);
    fp::Vec u0{}, u1{1};
    while (r1.size() > 1) {
        auto [q, rr] = fp_divrem(r0, r1, p);
        fp::Vec qu = fp::mul(q, u1, p);
        fp::Vec nu(std::max(u0.size(), qu.size()), 0);
        for (std::size_t i = 0; i < nu.size(); ++i) {
            std::uint64_t a0 = i < u0.size() ? u0[i] : 0;
            std::uint64_t b0 = i < qu.size() ? qu[i] : 0;
            nu[i] = (a0 + p - b0) % p;
        }
        fp::trim(nu);
        r0 = std::move(r1);
        r1 = std::move(rr);
        u0 = std::move(u1);
        u1 = std::move(nu);
    }
    // r1 is a nonzero constant
    const std::uint64_t s = fp::invmod(r1[0], p);
    for (auto& c : u1)
        c = fp::mulmod(c, s, p);
    return f_.from_coeffs(u1);
}

Elem operator/(const Elem& a, const Elem& b) { return a * b.inv(); }

Elem Elem::pow(const mpz_class& e) const
{
    if (sgn(e) < 0)
        return inv().pow(mpz_class(-e));
    Elem r = f_.one();
    const std::size_t bits = sgn(e) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = r * *this;
    }
    return r;
}

Elem Elem::pow(std::uint64_t e) const
{
    Elem r = f_.one();
    Elem b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

Elem Elem::frobenius() const
{
    if (!f_.is_finite() || f_.kind() == FieldKind::Prime)
        return *this;
    return pow(f_.characteristic());
}

bool Elem::operator==(const Elem& b) const
{
    if (!(f_.same(b.f_) || f_ == b.f_))
        return false;
    if (auto q = std::get_if<mpq_class>(&v_))
        return *q == b.rational();
    return coeffs() == b.coeffs();
}

std::strong_ordering Elem::compare(const Elem& b) const
{
    if (auto q = std::get_if<mpq_class>(&v_)) {
        int c = cmp(*q, b.rational());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    const auto& x = coeffs();
    const auto& y = b.coeffs();
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i])
            return x[i] < y[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool Elem::in_prime_field() const
{
    if (!f_.is_finite())
        return true;
    const auto& c = coeffs();
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i])
            return false;
    return true;
}

std::uint64_t Elem::prime_value() const
{
    if (!f_.is_finite() || !in_prime_field())
        fail(ErrorKind::Internal, "prime_value on a non-prime-field element");
    return coeffs()[0];
}

std::string Elem::str() const
{
    if (auto q = std::get_if<mpq_class>(&v_))
        return q->get_str();
    const auto& c = coeffs();
    if (f_.kind() == FieldKind::Prime)
        return std::to_string(c[0]);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (!c[i])
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c[i] != 1)
            os << c[i];
        if (i > 0) {
            if (c[i] != 1)
                os << "*";
            os << "a";
            if (i > 1)
                os << "^" << i;
        }
    }
    if (first)
        return "0";
    return os.str();
}

// ---------------------------------------------------------------- square roots

bool is_square(const Elem& a)
{
    if (a.is_zero())
        return true;
    const Field& f = a.field();
    if (!f.is_finite()) {
        const mpq_class& q = a.rational();
        return sgn(q) > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
    }
    if (f.characteristic() == 2)
        return true;
    mpz_class e = (f.order() - 1) / 2;
    return a.pow(e).is_one();
}

std::optional<Elem> sqrt(const Elem& a)
{
    const Field& f = a.field();
    if (a.is_zero())
        return f.zero();
    if (!f.is_finite()) {
        if (!is_square(a))
            return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), a.rational().get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), a.rational().get_den_mpz_t());
        return f.from_rational(mpq_class(n, d));
    }
    const mpz_class q = f.order();
    if (f.characteristic() == 2)
        return a.pow(mpz_class(q / 2));
    if (!is_square(a))
        return std::nullopt;
    Elem root;
    if (q < 1000) {
        const std::uint64_t n = q.get_ui();
        for (std::uint64_t i = 0; i < n; ++i) {
            Elem x = f.element_at(i);
            if (x * x == a)
                return x; // first hit is the smaller of +-x
        }
        fail(ErrorKind::Internal, "exhaustive square root search failed");
    }
    // Tonelli-Shanks in F_q
    mpz_class m = q - 1;
    unsigned e = 0;
    while (mpz_even_p(m.get_mpz_t())) {
        m /= 2;
        ++e;
    }
    Elem z;
    for (std::uint64_t i = 2;; ++i) {
        z = f.element_at(i);
        if (!is_square(z))
            break;
    }
    Elem c = z.pow(m);
    Elem x = a.pow(mpz_class((m + 1) / 2));
    Elem t = a.pow(m);
    unsigned s = e;
    while (!t.is_one()) {
        unsigned i = 0;
        Elem t2 = t;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
        }
        Elem b = c;
        for (unsigned j = 0; j + i + 1 < s; ++j)
            b = b * b;
        x = x * b;
        c = b * b;
        t = t * c;
        s = i;
    }
    root = x;
    Elem other = -root;
    return other.compare(root) < 0 ? other : root;
}

// ---------------------------------------------------------------- Embedding (apply)

Embedding::Embedding(Field from, Field to, Elem gen_image)
    : from_(std::move(from)), to_(std::move(to)), gen_(std::move(gen_image))
{
}

Embedding Embedding::identity(const Field& f) { return Embedding(f, f, f.generator()); }

Elem Embedding::operator()(const Elem& e) const
{
    if (from_.same(to_) && (from_.kind() != FieldKind::Extension || gen_ == to_.generator()))
        return e;
    if (!from_.is_finite())
        return e;
    if (from_.kind() == FieldKind::Prime)
        return to_.from_int(static_cast<long>(e.coeffs()[0]));
    const auto& c = e.coeffs();
    Elem r = to_.zero();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * gen_;
        if (c[i])
            r = r + to_.from_int(static_cast<long>(c[i]));
    }
    return r;
}

Embedding Embedding::then(const Embedding& next) const
{
    return Embedding(from_, next.to_, next(gen_));
}

} // namespace dplane
