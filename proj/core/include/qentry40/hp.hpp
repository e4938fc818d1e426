#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <utility>

namespace qentry40 {

/// Arbitrary-precision real scalar.  Precision is set at runtime through
/// set_working_precision_bits(); every value constructed afterwards carries
/// that precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

unsigned bits_to_digits10(unsigned bits);
void set_working_precision_bits(unsigned bits);
unsigned working_precision_bits();

/// RAII guard that switches the working precision and restores it on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_bits_;
};

Real real_pi();

/// Complex scalar over Real.  All multivalued functions (sqrt, log, pow)
/// take the principal branch: the cut lies along the negative real axis and
/// Im(log) lies in (-pi, pi].
class Complex {
public:
    Complex() : re_(0), im_(0) {}
    Complex(const Real& re) : re_(re), im_(0) {}
    Complex(Real&& re) : re_(std::move(re)), im_(0) {}
    Complex(const Real& re, const Real& im) : re_(re), im_(im) {}
    Complex(double re) : re_(re), im_(0) {}
    Complex(double re, double im) : re_(re), im_(im) {}
    Complex(int re) : re_(re), im_(0) {}
    Complex(long re) : re_(re), im_(0) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);

    Complex operator-() const { return Complex(-re_, -im_); }

private:
    Real re_, im_;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
bool operator==(const Complex& a, const Complex& b);
bool operator!=(const Complex& a, const Complex& b);

Real abs(const Complex& z);
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex pow(const Complex& base, const Complex& expo);
Complex pow(const Complex& base, const Real& expo);
/// Integer power by repeated squaring (exact factor count, no branch issues).
Complex ipow(const Complex& base, long n);
Complex polar(const Real& mag, const Real& angle);

std::string to_string(const Real& x);
std::string to_string(const Complex& z);

}  // namespace qentry40
