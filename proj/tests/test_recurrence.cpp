// Three-term recurrence: coefficient formulas, explicit solutions, limits at
// integer indices, and minimality of the combined solution.

#include "qentry40/recurrence.hpp"

#include <doctest.h>

using namespace qentry40;

namespace {

Real tol(double digits) { return pow(Real(10), Real(-digits)); }

// A generic instance with s = q^m inside the annulus |s/q| < |a| < |s/q^2|.
RecurrenceInstance make_instance(long m, const Complex& q) {
    QContext ctx = QContext::make(q);
    VwpParams p;
    Complex qm = ipow(q, m);
    p.a = qpow(ctx, Real(m) - Real(1.5));  // |q^{m-3/2}| sits mid-annulus
    p.b = Complex(1.15, 0.1);
    p.c = Complex(0.85, -0.05);
    p.d = Complex(1.25, 0.2);
    p.e = Complex(0.95, 0.1);
    p.f = ipow(p.a, 3) * ipow(q, 3) / (p.b * p.c * p.d * p.e * qm);  // s = q^m exactly
    return RecurrenceInstance{p, ctx, m};
}

Complex residual(const RecurrenceInstance& inst, long n,
                 Complex (*sol)(const RecurrenceInstance&, long)) {
    Complex xm = sol(inst, n - 1), x0 = sol(inst, n), xp = sol(inst, n + 1);
    Complex r = xp - coeff_a(inst, n) * x0 + coeff_b(inst, n) * xm;
    Real scale = abs(xp) + abs(x0) + abs(xm);
    return r / Complex(scale);
}

}  // namespace

TEST_CASE("instance helpers: s value and annulus test") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(3, Complex(0.35, 0.1));
    CHECK(abs(inst.s() - ipow(inst.ctx.q, 3)) < tol(70));
    CHECK(inst.annulus_ok());

    RecurrenceInstance off = inst;
    off.p.a = Complex(5.0);
    CHECK(!off.annulus_ok());
}

TEST_CASE("coefficients at generic indices match the raw formulas") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(3, Complex(0.35, 0.1));
    for (long n : {1L, 2L, 4L, 7L}) {
        Complex ar = coeff_a_raw(inst.p, inst.s(), Complex(n), inst.ctx);
        Complex br = coeff_b_raw(inst.p, inst.s(), Complex(n), inst.ctx);
        CHECK(abs(coeff_a(inst, n) - ar) < tol(60) * abs(ar));
        CHECK(abs(coeff_b(inst, n) - br) < tol(60) * abs(br));
    }
}

TEST_CASE("Auto limit path agrees with an explicit index limit at s = q") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(1, Complex(0.3, 0.08));
    // At s = q the index-1 coefficients are indeterminate in the raw formula;
    // Auto must reproduce the limit of the formula along a perturbed index.
    for (long n : {0L, 1L}) {
        Complex auto_a = coeff_a(inst, n);
        Complex lim_a = richardson_limit(
            [&](const Real& eps) {
                return coeff_a_raw(inst.p, inst.s(), Complex(Real(n) + eps), inst.ctx);
            },
            default_limit_eps(inst.ctx));
        CHECK(abs(auto_a - lim_a) < tol(18) * (abs(auto_a) + Real(1)));
    }
    Complex auto_b = coeff_b(inst, 1);
    Complex lim_b = richardson_limit(
        [&](const Real& eps) {
            return coeff_b_raw(inst.p, inst.s(), Complex(Real(1) + eps), inst.ctx);
        },
        default_limit_eps(inst.ctx));
    CHECK(abs(auto_b - lim_b) < tol(18) * (abs(auto_b) + Real(1)));
}

TEST_CASE("s-limit path doubles the first partial numerator at s = q") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(1, Complex(0.3, 0.08));
    Complex plain = coeff_b(inst, 1, LimitPath::Auto);
    Complex slim = coeff_b(inst, 1, LimitPath::SToPower);
    CHECK(abs(slim - Complex(2) * plain) < tol(18) * abs(slim));
}

TEST_CASE("explicit solutions satisfy the recurrence") {
    set_working_precision_bits(256);
    for (long m : {3L, 4L}) {
        RecurrenceInstance inst = make_instance(m, Complex(0.35, 0.1));
        for (long n : {1L, 2L, 5L}) {
            CHECK(abs(residual(inst, n, &x1)) < tol(55));
            CHECK(abs(residual(inst, n, &x2)) < tol(55));
            CHECK(abs(residual(inst, n, &x3)) < tol(50));
        }
    }
}

TEST_CASE("raw solutions agree with the integer-index wrappers") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(3, Complex(0.35, 0.1));
    for (long n : {0L, 2L, 4L}) {
        Complex raw = x1_raw(inst.p, inst.s(), Complex(n), inst.ctx);
        CHECK(abs(x1(inst, n) - raw) < tol(55) * (abs(raw) + Real(1)));
    }
}

TEST_CASE("combined solution is minimal: x3/x1 decays, x2/x1 does not vanish") {
    set_working_precision_bits(256);
    RecurrenceInstance inst = make_instance(3, Complex(0.3, 0.05));
    Real prev_ratio{0};
    bool first = true;
    for (long n : {6L, 10L, 14L}) {
        Real ratio = abs(x3(inst, n)) / abs(x1(inst, n));
        if (!first) CHECK(ratio < prev_ratio / Real(100));
        prev_ratio = ratio;
        first = false;
    }
    // The dominant pair stays comparable: x2/x1 approaches w2/w1, not zero.
    Real dom = abs(x2(inst, 14)) / abs(x1(inst, 14));
    Real lim = abs(w2(inst)) / abs(w1(inst));
    CHECK(abs(dom - lim) < Real(1e-6) * lim);
}

TEST_CASE("Richardson extrapolation is exact on affine functions") {
    set_working_precision_bits(256);
    Complex a(1.3, -0.4), b(0.7, 0.2);
    Complex lim = richardson_limit([&](const Real& eps) { return a + b * Complex(eps); },
                                   Real(1) / 1024);
    CHECK(abs(lim - a) < tol(70));
}
