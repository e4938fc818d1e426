// Basic hypergeometric series, checked against classical summation formulas
// (q-binomial theorem, q-Chu-Vandermonde, the very-well-poised 6-series sum,
// Jackson's terminating 8-series sum) and explicit term-by-term loops.

#include "qentry40/hyperq.hpp"

#include <doctest.h>

using namespace qentry40;

namespace {

Real tol(double digits) { return pow(Real(10), Real(-digits)); }

}  // namespace

TEST_CASE("q-binomial theorem: 1phi0(a;;q,z) = (az)_inf/(z)_inf") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.4, 0.15));
    Complex a(1.6, 0.3), z(0.5, -0.2);
    PhiSpec spec{{a}, {}, z, std::nullopt};
    Complex lhs = eval_phi_generic(spec, ctx);
    Complex rhs = qpoch_infinite(a * z, ctx) / qpoch_infinite(z, ctx);
    CHECK(abs(lhs - rhs) < tol(65) * abs(rhs));
}

TEST_CASE("q-Chu-Vandermonde: terminating 2phi1 at argument q") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.1));
    Complex a(0.8, 0.4), c(1.7, -0.6);
    for (long n : {1L, 3L, 6L}) {
        Complex qmn = ipow(ctx.q, -n);
        PhiSpec spec{{a, qmn}, {c}, ctx.q, n};
        SeriesInfo info;
        Complex lhs = eval_phi_generic(spec, ctx, &info);
        CHECK(info.terms == n + 1);
        Complex rhs = ipow(a, n) * qpoch_finite(c / a, ctx, n) / qpoch_finite(c, ctx, n);
        CHECK(abs(lhs - rhs) < tol(65) * abs(rhs));
    }
}

TEST_CASE("phi series throws on a denominator pole before termination") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.0));
    // Denominator parameter q^-2 hits zero at term 3 of a non-terminating sum.
    PhiSpec spec{{Complex(0.5)}, {ipow(ctx.q, -2)}, Complex(0.4), std::nullopt};
    CHECK_THROWS_AS(eval_phi_generic(spec, ctx), Error);
}

TEST_CASE("VwpParams: derived argument and reflection") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.4, 0.2));
    VwpParams p{Complex(1.1, 0.1), Complex(0.9, 0.2), Complex(1.3, -0.1), Complex(0.7, 0.3),
                Complex(1.2, 0.05), Complex(0.95, -0.15)};
    Complex s = p.s(ctx);
    Complex expect = ipow(p.a, 3) * ipow(ctx.q, 3) / (p.b * p.c * p.d * p.e * p.f);
    CHECK(abs(s - expect) < tol(70) * abs(expect));

    // Reflection sends s to q * bcdef / a^3, so s * s_reflected = q^4.
    VwpParams r = p.reflected(ctx);
    CHECK(abs(r.a - ctx.q / p.a) < tol(70));
    CHECK(abs(s * r.s(ctx) - ipow(ctx.q, 4)) < tol(68));
}

TEST_CASE("non-terminating 8-series with a cancelling pair sums in products") {
    // With f = aq/e the (e, f) numerator parameters cancel the matching
    // denominator pair, leaving the classical very-well-poised 6-series whose
    // sum is a ratio of four infinite products.
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.1));
    Complex a(1.2, 0.1), b(1.4, -0.2), c(1.5, 0.3), d(1.3, 0.15);
    Complex e(0.9, 0.05), f = a * ctx.q / e;
    Complex z = a * ctx.q / (b * c * d);
    REQUIRE(abs(z) < Real(1));

    Complex lhs = eval_w(a, b, c, d, e, f, ctx);
    Complex aq = a * ctx.q;
    Complex rhs = qpoch_multi({aq, aq / (b * c), aq / (b * d), aq / (c * d)}, ctx) /
                  qpoch_multi({aq / b, aq / c, aq / d, aq / (b * c * d)}, ctx);
    CHECK(abs(lhs - rhs) < tol(60) * abs(rhs));
}

TEST_CASE("Jackson's sum: terminating balanced 8-series") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.12));
    Complex a(1.1, 0.2), b(0.8, -0.1), c(1.3, 0.25), d(0.95, 0.1);
    for (long n : {2L, 5L}) {
        Complex f = ipow(ctx.q, -n);
        Complex e = a * a * ipow(ctx.q, n + 1) / (b * c * d);  // forces argument q
        Complex lhs = eval_w(a, b, c, d, e, f, ctx);
        Complex aq = a * ctx.q;
        Complex rhs = qpoch_finite(aq, ctx, n) * qpoch_finite(aq / (b * c), ctx, n) *
                      qpoch_finite(aq / (b * d), ctx, n) * qpoch_finite(aq / (c * d), ctx, n) /
                      (qpoch_finite(aq / b, ctx, n) * qpoch_finite(aq / c, ctx, n) *
                       qpoch_finite(aq / d, ctx, n) * qpoch_finite(aq / (b * c * d), ctx, n));
        CHECK(abs(lhs - rhs) < tol(63) * abs(rhs));
    }
}

TEST_CASE("eval_w rejects a divergent non-terminating argument") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.0));
    // Generic parameters with |a^2 q^2 / (bcdef)| > 1 and no q^-n among them.
    Complex a(2.0, 0.1), b(0.5, 0.0), c(0.6, 0.1), d(0.7, -0.1), e(0.8, 0.0), f(0.9, 0.1);
    REQUIRE(abs(a * a * ctx.q * ctx.q / (b * c * d * e * f)) > Real(1));
    CHECK_THROWS_AS(eval_w(a, b, c, d, e, f, ctx), Error);
}

TEST_CASE("eval_wtilde and eval_u wrap eval_w with the stated products") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.1));
    VwpParams p{Complex(1.2, 0.1), Complex(1.4, -0.2), Complex(1.5, 0.3), Complex(1.3, 0.15),
                Complex(0.9, 0.05), Complex(0)};
    p.f = ipow(p.a, 3) * ctx.q / (p.b * p.c * p.d * p.e);  // s = q^2, argument q/a
    Complex aq = p.a * ctx.q;
    Complex w = eval_w(p, ctx);
    Complex wt = eval_wtilde(p, ctx);
    Complex pre = qpoch_multi({aq / p.b, aq / p.c, aq / p.d, aq / p.e, aq / p.f}, ctx);
    CHECK(abs(wt - pre * w) < tol(60) * abs(wt));
    Complex u = eval_u(p, ctx);
    Complex den = qpoch_multi({aq, p.b, p.c, p.d, p.e, p.f}, ctx);
    CHECK(abs(u * den - wt) < tol(60) * abs(wt));
}

TEST_CASE("eval_u refuses a vanishing denominator product") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.3, 0.1));
    VwpParams p{Complex(1.2, 0.1), ipow(ctx.q, -2), Complex(1.5, 0.3), Complex(1.3, 0.15),
                Complex(0.9, 0.05), Complex(1.05, -0.1)};
    CHECK_THROWS_AS(eval_u(p, ctx), Error);
}

TEST_CASE("terminating balanced 10-series matches an explicit loop") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.1));
    const long n = 4;
    Complex a(1.1, 0.15), b(0.9, 0.1), c(1.2, -0.2), d(0.8, 0.05), e(1.3, 0.1), f(0.95, -0.1);
    Complex h = ipow(ctx.q, -n);
    // Balance a^3 q^2 = bcdefgh fixes g.
    Complex g = ipow(a, 3) * ipow(ctx.q, 2) / (b * c * d * e * f * h);
    std::array<Complex, 7> others{b, c, d, e, f, g, h};

    Complex lhs = phi10_9(a, others, ctx, n);

    Complex sum(0);
    for (long k = 0; k <= n; ++k) {
        Complex term = (Complex(1) - a * ipow(ctx.q, 2 * k)) / (Complex(1) - a);
        term *= qpoch_finite(a, ctx, k) / qpoch_finite(ctx.q, ctx, k);
        for (const Complex& x : others) {
            term *= qpoch_finite(x, ctx, k) / qpoch_finite(a * ctx.q / x, ctx, k);
        }
        term *= ipow(ctx.q, k);
        sum += term;
    }
    CHECK(abs(lhs - sum) < tol(63) * abs(sum));
}

TEST_CASE("unbalanced 10-series is rejected") {
    set_working_precision_bits(256);
    QContext ctx = QContext::make(Complex(0.35, 0.1));
    Vwp10phi9Instance inst;
    inst.p = VwpParams{Complex(1.1), Complex(0.9), Complex(1.2), Complex(0.8), Complex(1.3),
                       Complex(0.95)};
    inst.g = Complex(1.05);
    inst.h = ipow(ctx.q, -3);
    inst.n = 3;
    REQUIRE(!inst.balanced(ctx));
    CHECK_THROWS_AS(eval_10phi9(inst, ctx), Error);
}
