// Scalar layer: precision control, complex arithmetic, and principal
// branches, checked against closed-form values and double-precision oracles.

#include "qentry40/hp.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace qentry40;

namespace {

Real tol(double digits) { return pow(Real(10), Real(-digits)); }

std::complex<double> to_std(const Complex& z) {
    return {static_cast<double>(z.re()), static_cast<double>(z.im())};
}

}  // namespace

TEST_CASE("precision scope switches and restores the working precision") {
    set_working_precision_bits(256);
    REQUIRE(working_precision_bits() == 256);
    {
        PrecisionScope guard(512);
        CHECK(working_precision_bits() == 512);
        Real x = Real(1) / 3;
        // A freshly constructed value must carry the scoped precision: the
        // relative gap to 1/3 at 512 bits is far below any 256-bit ulp.
        Real err = abs(x * 3 - 1);
        CHECK(err < pow(Real(2), Real(-400)));
    }
    CHECK(working_precision_bits() == 256);
}

TEST_CASE("bits_to_digits10 matches log10(2) scaling") {
    // ceil(bits * log10 2) plus two guard digits.
    CHECK(bits_to_digits10(256) == 80);
    CHECK(bits_to_digits10(512) == 157);
}

TEST_CASE("real_pi agrees with the double-precision constant") {
    set_working_precision_bits(256);
    CHECK(abs(real_pi() - Real(3.14159265358979323846)) < Real(1e-15));
}

TEST_CASE("complex field operations agree with std::complex") {
    set_working_precision_bits(256);
    Complex a(1.25, -0.75), b(-0.5, 2.0);
    std::complex<double> sa(1.25, -0.75), sb(-0.5, 2.0);

    CHECK(abs(a + b - Complex((sa + sb).real(), (sa + sb).imag())) < tol(14));
    CHECK(abs(a * b - Complex((sa * sb).real(), (sa * sb).imag())) < tol(14));
    CHECK(abs(a / b - Complex((sa / sb).real(), (sa / sb).imag())) < tol(14));
    CHECK(abs(conj(a) - Complex(1.25, 0.75)) == Real(0));
    CHECK(abs(norm(a) - abs(a) * abs(a)) < tol(70));

    // Division is exact inverse of multiplication to working precision.
    CHECK(abs((a / b) * b - a) < tol(70));
}

TEST_CASE("principal branch of sqrt and log") {
    set_working_precision_bits(256);
    // sqrt(-1) = +i on the principal branch.
    Complex i = sqrt(Complex(-1));
    CHECK(abs(i - Complex(0, 1)) < tol(70));

    // log of a negative real has Im = +pi, not -pi.
    Complex lg = log(Complex(-2));
    CHECK(abs(lg.im() - real_pi()) < tol(70));
    CHECK(abs(lg.re() - log(Complex(2)).re()) < tol(70));

    // Just below the cut the imaginary part flips toward -pi.
    Complex below = log(Complex(-2, -1e-30));
    CHECK(below.im() < Real(0));

    // exp(log(z)) = z away from the cut.
    Complex z(0.3, -1.7);
    CHECK(abs(exp(log(z)) - z) < tol(70));
}

TEST_CASE("pow and ipow are consistent") {
    set_working_precision_bits(256);
    Complex z(0.8, 0.4);
    CHECK(abs(ipow(z, 7) - pow(z, Complex(7))) < tol(70));
    CHECK(abs(ipow(z, -3) * ipow(z, 3) - Complex(1)) < tol(70));
    CHECK(abs(ipow(z, 0) - Complex(1)) == Real(0));

    // Half powers land on the principal square root.
    CHECK(abs(pow(z, Real(0.5)) - sqrt(z)) < tol(70));

    // Double-precision oracle for a generic complex power.
    std::complex<double> sz(0.8, 0.4), sw(1.3, -0.2);
    std::complex<double> sp = std::pow(sz, sw);
    CHECK(std::abs(to_std(pow(z, Complex(1.3, -0.2))) - sp) < 1e-13);
}

TEST_CASE("polar and arg round-trip") {
    set_working_precision_bits(256);
    Real r(2.5), th(0.7);
    Complex z = polar(r, th);
    CHECK(abs(abs(z) - r) < tol(70));
    CHECK(abs(arg(z) - th) < tol(70));
    // arg lies in (-pi, pi].
    CHECK(arg(Complex(-1)) == real_pi());
}

TEST_CASE("to_string emits the full working precision") {
    set_working_precision_bits(256);
    std::string s = to_string(Real(1) / 3);
    CHECK(s.size() >= 70);
    CHECK(s.find("3.3333333333") != std::string::npos);
    std::string c = to_string(Complex(1, -2));
    CHECK(c.find(',') != std::string::npos);
    CHECK(c.find("-2") != std::string::npos);
}
