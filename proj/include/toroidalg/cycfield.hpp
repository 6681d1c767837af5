#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace toroidalg {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1}.
// Arithmetic results store rational values with conductor 1; embed() does not.
class CycScalar {
public:
    CycScalar() : n_(1), c_(1) {}
    CycScalar(long v) : n_(1), c_{Rational(v)} {}
    CycScalar(const Rational& q) : n_(1), c_{q} {}
    CycScalar(long p, long q);

    static CycScalar root_of_unity(int n, long k);
    static CycScalar from_coeffs(int n, std::vector<Rational> coeffs);
    static CycScalar i() { return root_of_unity(4, 1); }

    int conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    const Rational& rational() const;

    // Same element written over Q(zeta_m); n must divide m.
    CycScalar embed(int m) const;

    CycScalar operator-() const;
    CycScalar& operator+=(const CycScalar& b);
    CycScalar& operator-=(const CycScalar& b);
    CycScalar& operator*=(const CycScalar& b);
    CycScalar& operator/=(const CycScalar& b);
    CycScalar inverse() const;
    CycScalar pow(long e) const;

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
    friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
    friend bool operator==(const CycScalar& a, const CycScalar& b);
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    std::string str() const;

private:
    int n_;
    std::vector<Rational> c_;

    void normalize();
};

std::ostream& operator<<(std::ostream& os, const CycScalar& x);

enum class FieldOp { add, sub, mul, div };
CycScalar field_arith(const CycScalar& a, const CycScalar& b, FieldOp op);

int euler_phi(int n);
// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_poly(int n);

} // namespace toroidalg
