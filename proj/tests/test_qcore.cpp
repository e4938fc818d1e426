// q-Pochhammer layer, checked against direct-loop oracles, the splitting
// identity, and Euler's q-exponential sum.

#include "qentry40/qcore.hpp"

#include <doctest.h>

using namespace qentry40;

namespace {

Real tol(double digits) { return pow(Real(10), Real(-digits)); }

// Independent finite-product oracle written as a plain loop.
Complex poch_loop(const Complex& x, const Complex& q, long n) {
    Complex prod(1), qk(1);
    for (long k = 0; k < n; ++k) {
        prod *= Complex(1) - x * qk;
        qk *= q;
    }
    return prod;
}

}  // namespace

TEST_CASE("qpoch_finite matches a direct loop") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.15));
    Complex x(0.8, -0.4);
    CHECK(abs(qpoch_finite(x, ctx, 0) - Complex(1)) == Real(0));
    for (long n : {1L, 2L, 5L, 17L}) {
        CHECK(abs(qpoch_finite(x, ctx, n) - poch_loop(x, ctx.q, n)) < tol(70));
    }
}

TEST_CASE("splitting identity (x;q)_inf = (x;q)_n (x q^n; q)_inf") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.45, 0.2));
    Complex x(1.3, 0.6);
    Complex full = qpoch_infinite(x, ctx);
    for (long n : {1L, 4L, 9L}) {
        Complex shifted = qpoch_infinite(x * ipow(ctx.q, n), ctx);
        CHECK(abs(full - qpoch_finite(x, ctx, n) * shifted) < tol(70) * abs(full));
    }
}

TEST_CASE("Euler q-exponential: sum z^k/(q;q)_k = 1/(z;q)_inf") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.4, 0.1));
    Complex z(0.55, -0.25);
    Complex sum(0), term(1), qk(1);
    for (long k = 0; k < 600; ++k) {
        sum += term;
        qk *= ctx.q;
        term *= z / (Complex(1) - qk);
        if (abs(term) < tol(80)) break;
    }
    Complex rhs = Complex(1) / qpoch_infinite(z, ctx);
    CHECK(abs(sum - rhs) < tol(68) * abs(rhs));
}

TEST_CASE("qpoch_infinite reports a small truncation bound") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.5, 0.0));
    ProductInfo info;
    Complex v = qpoch_infinite(Complex(0.9, 0.3), ctx, &info);
    CHECK(info.factors >= 8);
    CHECK(info.rel_error < tol(60));
    CHECK(abs(v) > Real(0));
}

TEST_CASE("qpoch_multi equals the product of single factors") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.2));
    Complex a(0.7, 0.1), b(1.2, -0.5), c(0.2, 0.9);
    Complex m = qpoch_multi({a, b, c}, ctx);
    Complex p = qpoch_infinite(a, ctx) * qpoch_infinite(b, ctx) * qpoch_infinite(c, ctx);
    CHECK(abs(m - p) < tol(68) * abs(p));
    CHECK(abs(qpoch_multi(std::initializer_list<Complex>{}, ctx) - Complex(1)) == Real(0));
}

TEST_CASE("g_inverse is the odd-power product at base q^2") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.4, 0.25));
    Complex x(1.1, -0.3);
    Complex prod(1);
    Complex qodd = ctx.q;  // q^{2m+1}
    Complex q2 = ctx.q * ctx.q;
    for (long m = 0; m < 400; ++m) {
        prod *= Complex(1) - x * qodd;
        qodd *= q2;
        if (abs(x * qodd) < tol(80)) break;
    }
    CHECK(abs(g_inverse(x, ctx) - prod) < tol(68) * abs(prod));
}

TEST_CASE("qpow agrees with ipow at integer exponents and is multiplicative") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.1));
    CHECK(abs(qpow(ctx, Real(5)) - ipow(ctx.q, 5)) < tol(70));
    CHECK(abs(qpow(ctx, Real(-2)) - ipow(ctx.q, -2)) < tol(70));
    Complex half = qpow(ctx, Real(0.5));
    CHECK(abs(half * half - ctx.q) < tol(70));
}

TEST_CASE("match_qpower finds exact powers and rejects perturbed ones") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.4, 0.15));
    auto hit = match_qpower(ipow(ctx.q, -3), ctx, -10, 10);
    REQUIRE(hit.has_value());
    CHECK(*hit == -3);
    Complex bump = Complex(1) + Complex(pow(Real(10), Real(-20)));
    CHECK(match_qpower(ipow(ctx.q, 4) * bump, ctx, -10, 10) == std::nullopt);
    CHECK(match_qpower(Complex(0.77, 0.12), ctx, -10, 10) == std::nullopt);
}

TEST_CASE("qpoch_vanishes detects x = q^-j") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.1));
    CHECK(qpoch_vanishes(Complex(1), ctx));             // j = 0
    CHECK(qpoch_vanishes(ipow(ctx.q, -5), ctx));        // j = 5
    CHECK(!qpoch_vanishes(ipow(ctx.q, 2), ctx));        // positive powers do not vanish
    CHECK(!qpoch_vanishes(Complex(1.4, 0.2), ctx));
}

TEST_CASE("with_base keeps tolerances but swaps the base") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.5, 0.2));
    QContext sq = ctx.with_base(ctx.q * ctx.q);
    CHECK(abs(sq.q - ctx.q * ctx.q) == Real(0));
    CHECK(sq.product_tol == ctx.product_tol);
    CHECK(sq.precision_bits == ctx.precision_bits);
}
