#include "qentry40/hp.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qentry40 {

namespace {
unsigned g_bits = 256;
}

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119)) + 2;
}

void set_working_precision_bits(unsigned bits) {
    if (bits < 64) {
        throw std::invalid_argument("working precision must be at least 64 bits");
    }
    g_bits = bits;
    Real::default_precision(bits_to_digits10(bits));
}

unsigned working_precision_bits() { return g_bits; }

PrecisionScope::PrecisionScope(unsigned bits) : saved_bits_(working_precision_bits()) {
    set_working_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { set_working_precision_bits(saved_bits_); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

Complex& Complex::operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    Real r = re_ * o.re_ - im_ * o.im_;
    Real i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = o.re_ * o.re_ + o.im_ * o.im_;
    if (d.is_zero()) {
        throw std::domain_error("complex division by zero");
    }
    Real r = (re_ * o.re_ + im_ * o.im_) / d;
    Real i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) {
    Complex r(a);
    r += b;
    return r;
}

Complex operator-(const Complex& a, const Complex& b) {
    Complex r(a);
    r -= b;
    return r;
}

Complex operator*(const Complex& a, const Complex& b) {
    Complex r(a);
    r *= b;
    return r;
}

Complex operator/(const Complex& a, const Complex& b) {
    Complex r(a);
    r /= b;
    return r;
}

bool operator==(const Complex& a, const Complex& b) {
    return a.re() == b.re() && a.im() == b.im();
}

bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

Real abs(const Complex& z) {
    using boost::multiprecision::hypot;
    return hypot(z.re(), z.im());
}

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real arg(const Complex& z) {
    using boost::multiprecision::atan2;
    return atan2(z.im(), z.re());
}

Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }

Complex exp(const Complex& z) {
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    Real m = exp(z.re());
    return Complex(m * cos(z.im()), m * sin(z.im()));
}

Complex log(const Complex& z) {
    using boost::multiprecision::log;
    if (z.is_zero()) {
        throw std::domain_error("log of zero");
    }
    return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
    using boost::multiprecision::sqrt;
    if (z.is_zero()) {
        return Complex(0);
    }
    if (z.im().is_zero() && z.re() > 0) {
        return Complex(sqrt(z.re()));
    }
    // Principal branch: half the modulus-argument representation.
    Real m = sqrt(abs(z));
    Real a = arg(z) / 2;
    return polar(m, a);
}

Complex pow(const Complex& base, const Complex& expo) {
    if (base.is_zero()) {
        if (expo.re() > 0) {
            return Complex(0);
        }
        throw std::domain_error("pow(0, w) with Re(w) <= 0");
    }
    return exp(expo * log(base));
}

Complex pow(const Complex& base, const Real& expo) { return pow(base, Complex(expo)); }

Complex ipow(const Complex& base, long n) {
    if (n == 0) {
        return Complex(1);
    }
    bool invert = n < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-(n + 1)) + 1ul
                             : static_cast<unsigned long>(n);
    Complex acc(1);
    Complex b = base;
    while (k != 0) {
        if (k & 1ul) {
            acc *= b;
        }
        k >>= 1;
        if (k != 0) {
            b *= b;
        }
    }
    if (invert) {
        return Complex(1) / acc;
    }
    return acc;
}

Complex polar(const Real& mag, const Real& angle) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    return Complex(mag * cos(angle), mag * sin(angle));
}

std::string to_string(const Real& x) {
    return x.str(0, std::ios_base::scientific);
}

std::string to_string(const Complex& z) {
    std::ostringstream os;
    os << "(" << to_string(z.re()) << ", " << to_string(z.im()) << ")";
    return os.str();
}

}  // namespace qentry40
