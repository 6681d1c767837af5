#include "toroidalg/cycfield.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace toroidalg {

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

int euler_phi(int n)
{
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::vector<long> poly_divexact(std::vector<long> num, const std::vector<long>& den)
{
    // den is monic
    const size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (size_t k = q.size(); k-- > 0;) {
        long lead = num[k + dn];
        q[k] = lead;
        for (size_t j = 0; j <= dn; ++j) num[k + j] -= lead * den[j];
    }
    return q;
}

} // namespace

const std::vector<long>& cyclotomic_poly(int n)
{
    static std::recursive_mutex mu;
    static std::map<int, std::vector<long>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        p = poly_divexact(p, cyclotomic_poly(d));
    }
    return cache.emplace(n, std::move(p)).first->second;
}

namespace {

// reduce a polynomial (coefficients, low first) modulo Phi_n in place
void reduce_mod(std::vector<Rational>& p, int n)
{
    const auto& phi = cyclotomic_poly(n);
    const size_t d = phi.size() - 1;
    for (size_t k = p.size(); k-- > d;) {
        if (sgn(p[k]) == 0) continue;
        Rational lead = p[k];
        for (size_t j = 0; j <= d; ++j)
            if (phi[j]) p[k - d + j] -= lead * phi[j];
    }
    p.resize(d);
}

} // namespace

CycScalar::CycScalar(long p, long q) : n_(1), c_(1)
{
    if (q == 0) throw ArithmeticError("zero denominator");
    c_[0] = Rational(p, q);
    c_[0].canonicalize();
}

CycScalar CycScalar::from_coeffs(int n, std::vector<Rational> coeffs)
{
    if (n <= 0) throw std::domain_error("conductor must be positive");
    reduce_mod(coeffs, n);
    for (auto& c : coeffs) c.canonicalize();
    CycScalar x;
    x.n_ = n;
    x.c_ = std::move(coeffs);
    x.c_.resize(euler_phi(n));
    x.normalize();
    return x;
}

CycScalar CycScalar::root_of_unity(int n, long k)
{
    if (n <= 0) throw std::domain_error("root_of_unity: n must be positive");
    long e = ((k % n) + n) % n;
    std::vector<Rational> p(e + 1);
    p[e] = 1;
    return from_coeffs(n, std::move(p));
}

void CycScalar::normalize()
{
    if (n_ == 1) return;
    for (size_t k = 1; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) return;
    Rational r = c_[0];
    n_ = 1;
    c_.assign(1, r);
}

bool CycScalar::is_zero() const
{
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

bool CycScalar::is_rational() const
{
    for (size_t k = 1; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) return false;
    return true;
}

const Rational& CycScalar::rational() const
{
    if (!is_rational()) throw ArithmeticError("not rational: " + str());
    return c_[0];
}

CycScalar CycScalar::embed(int m) const
{
    if (m % n_ != 0) throw std::domain_error("embed: conductor does not divide target");
    if (m == n_) return *this;
    const int step = m / n_;
    std::vector<Rational> p((c_.size() - 1) * step + 1);
    for (size_t k = 0; k < c_.size(); ++k) p[k * step] = c_[k];
    CycScalar x;
    reduce_mod(p, m);
    x.n_ = m;
    x.c_ = std::move(p);
    return x;
}

CycScalar CycScalar::operator-() const
{
    CycScalar x = *this;
    for (auto& q : x.c_) q = -q;
    return x;
}

CycScalar& CycScalar::operator+=(const CycScalar& b)
{
    if (n_ == b.n_) {
        for (size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    } else if (b.n_ == 1) {
        c_[0] += b.c_[0];
        return *this;
    } else {
        int m = std::lcm(n_, b.n_);
        CycScalar x = embed(m), y = b.embed(m);
        for (size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
        *this = std::move(x);
    }
    normalize();
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& b) { return *this += -b; }

CycScalar& CycScalar::operator*=(const CycScalar& b)
{
    if (b.n_ == 1) {
        for (auto& q : c_) q *= b.c_[0];
        normalize();
        return *this;
    }
    if (n_ == 1) {
        Rational s = c_[0];
        *this = b;
        for (auto& q : c_) q *= s;
        normalize();
        return *this;
    }
    int m = std::lcm(n_, b.n_);
    CycScalar x = embed(m), y = b.embed(m);
    std::vector<Rational> p(2 * x.c_.size() - 1);
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (sgn(x.c_[i]) == 0) continue;
        for (size_t j = 0; j < y.c_.size(); ++j)
            if (sgn(y.c_[j]) != 0) p[i + j] += x.c_[i] * y.c_[j];
    }
    reduce_mod(p, m);
    n_ = m;
    c_ = std::move(p);
    normalize();
    return *this;
}

CycScalar CycScalar::inverse() const
{
    if (is_zero()) throw ArithmeticError("division by zero");
    if (n_ == 1) return CycScalar(Rational(1) / c_[0]);
    // solve (multiplication by this) * x = 1 over Q
    const size_t d = c_.size();
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
    for (size_t col = 0; col < d; ++col) {
        std::vector<Rational> p(2 * d - 1);
        for (size_t k = 0; k < d; ++k) p[k + col] = c_[k];
        reduce_mod(p, n_);
        for (size_t row = 0; row < d; ++row) a[row][col] = p[row];
    }
    a[0][d] = 1;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        while (piv < d && sgn(a[piv][col]) == 0) ++piv;
        if (piv == d) throw ArithmeticError("singular multiplication matrix");
        std::swap(a[piv], a[col]);
        Rational inv = Rational(1) / a[col][col];
        for (auto& q : a[col]) q *= inv;
        for (size_t row = 0; row < d; ++row) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            Rational f = a[row][col];
            for (size_t k = col; k <= d; ++k) a[row][k] -= f * a[col][k];
        }
    }
    std::vector<Rational> x(d);
    for (size_t k = 0; k < d; ++k) x[k] = a[k][d];
    return from_coeffs(n_, std::move(x));
}

CycScalar& CycScalar::operator/=(const CycScalar& b)
{
    if (b.is_zero())
        throw ArithmeticError("division by zero: " + str() + " / " + b.str());
    return *this *= b.inverse();
}

CycScalar CycScalar::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    CycScalar result(1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool operator==(const CycScalar& a, const CycScalar& b)
{
    if (a.n_ == b.n_) return a.c_ == b.c_;
    int m = std::lcm(a.n_, b.n_);
    return a.embed(m).c_ == b.embed(m).c_;
}

std::string CycScalar::str() const
{
    if (n_ == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k].get_str();
        if (k > 0) os << "*z" << n_ << "^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycScalar& x) { return os << x.str(); }

CycScalar field_arith(const CycScalar& a, const CycScalar& b, FieldOp op)
{
    switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div:
        if (b.is_zero())
            throw ArithmeticError("division by zero: " + a.str() + " / " + b.str());
        return a / b;
    }
    throw std::logic_error("field_arith: bad op");
}

} // namespace toroidalg
