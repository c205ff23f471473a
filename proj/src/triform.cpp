#include "dplane/triform.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace dplane {

std::vector<Mono> monomials(unsigned d)
{
    std::vector<Mono> out;
    out.reserve(monomial_count(d));
    for (unsigned a = d + 1; a-- > 0;)
        for (unsigned b = d - a + 1; b-- > 0;)
            out.push_back({a, b, d - a - b});
    return out;
}

TriForm::TriForm(Field f, unsigned d) : f_(std::move(f)), d_(d), c_(monomial_count(d), f_.zero()) {}

std::size_t TriForm::index(unsigned a, unsigned b) const
{
    const unsigned t = d_ - a;
    return t * (t + 1) / 2 + (t - b);
}

TriForm TriForm::monomial(const Elem& c, Mono e)
{
    TriForm f(c.field(), e[0] + e[1] + e[2]);
    f.set(e, c);
    return f;
}

TriForm TriForm::linear(const Elem& a, const Elem& b, const Elem& c)
{
    TriForm f(a.field(), 1);
    f.set({1, 0, 0}, a);
    f.set({0, 1, 0}, b);
    f.set({0, 0, 1}, c);
    return f;
}

bool TriForm::is_zero() const
{
    for (const auto& c : c_)
        if (!c.is_zero())
            return false;
    return true;
}

Elem TriForm::coeff(const Mono& e) const
{
    if (e[0] + e[1] + e[2] != d_)
        return f_.zero();
    return c_[index(e[0], e[1])];
}

void TriForm::set(const Mono& e, const Elem& c)
{
    DPLANE_ASSERT(e[0] + e[1] + e[2] == d_, "monomial degree mismatch");
    c_[index(e[0], e[1])] = c;
}

std::vector<std::pair<Mono, Elem>> TriForm::terms() const
{
    std::vector<std::pair<Mono, Elem>> out;
    std::size_t i = 0;
    for (const auto& m : monomials(d_)) {
        if (!c_[i].is_zero())
            out.emplace_back(m, c_[i]);
        ++i;
    }
    return out;
}

Elem TriForm::leading() const
{
    for (const auto& c : c_)
        if (!c.is_zero())
            return c;
    fail(ErrorKind::ZeroPolynomial, "zero form has no leading coefficient");
}

TriForm TriForm::scaled(const Elem& s) const
{
    TriForm r = *this;
    for (auto& c : r.c_)
        c *= s;
    return r;
}

TriForm TriForm::partial(int var) const
{
    if (d_ == 0)
        return TriForm(f_, 0);
    TriForm r(f_, d_ - 1);
    for (const auto& [m, c] : terms()) {
        const unsigned e = m[static_cast<std::size_t>(var)];
        if (e == 0)
            continue;
        Mono n = m;
        --n[static_cast<std::size_t>(var)];
        r.set(n, c * f_.from_int(static_cast<long>(e)));
    }
    return r;
}

TriForm TriForm::substitute(const Matrix3& m) const
{
    std::array<std::vector<TriForm>, 3> pw;
    for (std::size_t i = 0; i < 3; ++i) {
        const TriForm l = linear(m[i][0], m[i][1], m[i][2]);
        pw[i].push_back(monomial(f_.one(), {0, 0, 0}));
        for (unsigned k = 1; k <= d_; ++k)
            pw[i].push_back(pw[i].back() * l);
    }
    TriForm r(f_, d_);
    // group by the x exponent so each power of the first linear form is multiplied once
    for (unsigned a = 0; a <= d_; ++a) {
        TriForm inner(f_, d_ - a);
        bool any = false;
        for (unsigned b = 0; a + b <= d_; ++b) {
            const Elem& c = c_[index(a, b)];
            if (c.is_zero())
                continue;
            inner = inner + (pw[1][b] * pw[2][d_ - a - b]).scaled(c);
            any = true;
        }
        if (any)
            r = r + pw[0][a] * inner;
    }
    return r;
}

TriForm TriForm::map(const Embedding& e) const
{
    TriForm r(e.to(), d_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = e(c_[i]);
    return r;
}

namespace {

Elem eval_terms(const std::vector<std::pair<Mono, Elem>>& terms, const std::array<Elem, 3>& p, unsigned d)
{
    const Field& f = p[0].field();
    std::array<std::vector<Elem>, 3> pw;
    for (std::size_t i = 0; i < 3; ++i) {
        pw[i].push_back(f.one());
        for (unsigned k = 1; k <= d; ++k)
            pw[i].push_back(pw[i].back() * p[i]);
    }
    Elem s = f.zero();
    for (const auto& [m, c] : terms)
        s += c * pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]];
    return s;
}

} // namespace

Elem TriForm::eval(const std::array<Elem, 3>& p, const Embedding& e) const
{
    auto t = terms();
    for (auto& [m, c] : t)
        c = e(c);
    return eval_terms(t, p, d_);
}

Elem TriForm::eval(const std::array<Elem, 3>& p) const { return eval_terms(terms(), p, d_); }

BiPoly TriForm::slice(int one, int main) const
{
    const int rest = 3 - one - main;
    std::vector<std::vector<Elem>> cols(d_ + 1, std::vector<Elem>(d_ + 1, f_.zero()));
    for (const auto& [m, c] : terms())
        cols[m[static_cast<std::size_t>(main)]][m[static_cast<std::size_t>(rest)]] = c;
    std::vector<UniPoly> v;
    for (auto& col : cols)
        v.emplace_back(f_, std::move(col));
    return BiPoly(f_, std::move(v));
}

TriForm TriForm::from_slice(const BiPoly& g, unsigned d)
{
    TriForm r(g.field(), d);
    for (std::size_t c = 0; c < g.coeffs().size(); ++c) {
        const auto& u = g.coeffs()[c].coeffs();
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (u[a].is_zero())
                continue;
            DPLANE_ASSERT(a + c <= d, "slice exceeds the target degree");
            r.set({static_cast<unsigned>(a), static_cast<unsigned>(d - a - c), static_cast<unsigned>(c)}, u[a]);
        }
    }
    return r;
}

TriForm operator+(const TriForm& a, const TriForm& b)
{
    if (a.d_ != b.d_) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        fail(ErrorKind::Inhomogeneous, "sum of forms of degrees " + std::to_string(a.d_) + " and " + std::to_string(b.d_));
    }
    TriForm r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    return r;
}

TriForm TriForm::operator-() const
{
    TriForm r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

TriForm operator-(const TriForm& a, const TriForm& b) { return a + (-b); }

TriForm operator*(const TriForm& a, const TriForm& b)
{
    TriForm r(a.f_, a.d_ + b.d_);
    const auto ta = a.terms();
    const auto tb = b.terms();
    for (const auto& [ma, ca] : ta)
        for (const auto& [mb, cb] : tb) {
            const std::size_t i = r.index(ma[0] + mb[0], ma[1] + mb[1]);
            r.c_[i] += ca * cb;
        }
    return r;
}

bool TriForm::operator==(const TriForm& b) const
{
    if (is_zero() && b.is_zero())
        return true;
    if (d_ != b.d_)
        return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != b.c_[i])
            return false;
    return true;
}

bool TriForm::proportional(const TriForm& b) const
{
    if (d_ != b.d_ || is_zero() || b.is_zero())
        return false;
    return monic() == b.monic();
}

// ---------------------------------------------------------------- printing

std::string format_coeff(const Elem& c, bool& neg)
{
    neg = false;
    const Field& f = c.field();
    if (f.kind() == FieldKind::Rationals) {
        mpq_class q = c.rational();
        if (q < 0) {
            neg = true;
            q = -q;
        }
        return q.get_str();
    }
    if (c.in_prime_field()) {
        const std::uint64_t p = f.characteristic();
        std::uint64_t v = c.prime_value();
        if (v > p / 2) {
            neg = true;
            v = p - v;
        }
        return std::to_string(v);
    }
    return "(" + c.str() + ")";
}

std::string TriForm::str() const
{
    const auto t = terms();
    if (t.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t) {
        bool neg = false;
        std::string cs = format_coeff(c, neg);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        const char vars[3] = {'x', 'y', 'z'};
        for (std::size_t i = 0; i < 3; ++i) {
            if (m[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += vars[i];
            if (m[i] > 1)
                mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
  public:
    Parser(std::string_view s, const Field& f) : s_(s), f_(f) {}

    TriForm run()
    {
        std::map<Mono, Elem> acc;
        bool have_degree = false;
        unsigned degree = 0;
        skip();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++i_;
        }
        for (;;) {
            auto [m, c] = term();
            if (neg)
                c = -c;
            const unsigned d = m[0] + m[1] + m[2];
            if (!have_degree) {
                degree = d;
                have_degree = true;
            } else if (d != degree) {
                fail(ErrorKind::Inhomogeneous,
                     "monomials of degree " + std::to_string(degree) + " and " + std::to_string(d));
            }
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, c);
            else
                it->second += c;
            skip();
            if (i_ == s_.size())
                break;
            if (peek() == '+')
                neg = false;
            else if (peek() == '-')
                neg = true;
            else
                error("expected '+' or '-'");
            ++i_;
        }
        TriForm r(f_, degree);
        for (const auto& [m, c] : acc)
            r.set(m, c);
        if (r.is_zero())
            fail(ErrorKind::ZeroPolynomial, "the form is identically zero");
        return r;
    }

  private:
    [[noreturn]] void error(const std::string& what)
    {
        fail(ErrorKind::SyntaxError, what + " at position " + std::to_string(i_));
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    char peek()
    {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    mpz_class uint()
    {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (start == i_)
            error("expected an unsigned integer");
        return mpz_class(std::string(s_.substr(start, i_ - start)));
    }

    unsigned exponent()
    {
        mpz_class e = uint();
        if (e > 1000)
            error("exponent too large");
        return static_cast<unsigned>(e.get_ui());
    }

    Elem coeff()
    {
        mpz_class n = uint();
        if (peek() == '/') {
            const std::size_t at = i_;
            ++i_;
            mpz_class d = uint();
            if (d == 0) {
                i_ = at;
                error("zero denominator");
            }
            if (f_.is_finite())
                fail(ErrorKind::CoefficientNotInField, "fractions are only allowed over Q");
            return f_.from_rational(mpq_class(n, d));
        }
        return f_.from_mpz(n);
    }

    // '(' polynomial in the generator a ')'
    Elem ext_coeff()
    {
        if (f_.kind() != FieldKind::Extension)
            fail(ErrorKind::CoefficientNotInField, "parenthesised coefficients need an extension field");
        ++i_;
        const Elem gen = f_.generator();
        Elem total = f_.zero();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++i_;
        }
        for (;;) {
            Elem c = f_.one();
            unsigned e = 0;
            const char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c = f_.from_mpz(uint());
                if (peek() == '*') {
                    ++i_;
                    if (peek() != 'a')
                        error("expected 'a'");
                }
            }
            if (peek() == 'a') {
                ++i_;
                e = 1;
                if (peek() == '^') {
                    ++i_;
                    e = exponent();
                }
            } else if (!std::isdigit(static_cast<unsigned char>(ch))) {
                error("expected a coefficient term");
            }
            Elem t = c * gen.pow(static_cast<std::uint64_t>(e));
            total += neg ? -t : t;
            const char nx = peek();
            if (nx == ')') {
                ++i_;
                return total;
            }
            if (nx == '+')
                neg = false;
            else if (nx == '-')
                neg = true;
            else
                error("expected '+', '-' or ')'");
            ++i_;
        }
    }

    bool mono(Mono& m)
    {
        const char ch = peek();
        int v = ch == 'x' ? 0 : ch == 'y' ? 1 : ch == 'z' ? 2 : -1;
        if (v < 0)
            return false;
        ++i_;
        unsigned e = 1;
        if (peek() == '^') {
            ++i_;
            e = exponent();
        }
        m[static_cast<std::size_t>(v)] += e;
        return true;
    }

    void monos(Mono& m)
    {
        if (!mono(m))
            error("expected x, y or z");
        while (peek() == '*') {
            ++i_;
            if (!mono(m))
                error("expected x, y or z");
        }
    }

    std::pair<Mono, Elem> term()
    {
        Mono m{0, 0, 0};
        const char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '(') {
            Elem c = ch == '(' ? ext_coeff() : coeff();
            if (peek() == '*') {
                ++i_;
                monos(m);
            }
            return {m, c};
        }
        if (ch == '\0')
            error("unexpected end of input");
        monos(m);
        return {m, f_.one()};
    }

    std::string_view s_;
    const Field& f_;
    std::size_t i_ = 0;
};

} // namespace

TriForm TriForm::parse(std::string_view text, const Field& f) { return Parser(text, f).run(); }

} // namespace dplane
