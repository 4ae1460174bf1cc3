#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fec {

using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;

inline std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational: " + s);
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    Integer p(num), q(den);
    if (q == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
template <class P, class Q>
inline Rational ratio(const P& p, const Q& q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Integer factorial(int n)
{
    if (n < 0) throw std::invalid_argument("negative factorial");
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Binomial coefficient with the convention C(n,m) = 0 whenever m < 0 or n < m.
inline std::int64_t binom(std::int64_t n, std::int64_t m)
{
    if (m < 0 || n < m) return 0;
    if (m > n - m) m = n - m;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= m; ++i) r = r * (n - m + i) / i;
    return r;
}

inline Integer multi_factorial(const std::vector<int>& a)
{
    Integer r = 1;
    for (int x : a) r *= factorial(x);
    return r;
}

inline Rational dot(const Vec& a, const Vec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

inline Vec cross(const Vec& a, const Vec& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec operator-(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator+(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator*(const Rational& s, const Vec& a)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline bool is_zero(const Vec& a)
{
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

inline Vec unit_vector(int n, int i)
{
    Vec e(n, Rational(0));
    e[i] = 1;
    return e;
}

} // namespace fec
