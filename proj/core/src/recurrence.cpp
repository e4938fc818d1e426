#include "qentry40/recurrence.hpp"

#include <vector>

namespace qentry40 {

namespace {

const Complex kOne(1);

// Arguments of every infinite product entering x1 at index n.
std::vector<Complex> x1_product_args(const VwpParams& p, const Complex& s, const Complex& qn,
                                     const QContext& ctx) {
    const Complex& q = ctx.q;
    std::vector<Complex> args = {s * qn * qn / q, p.a * qn * q, s * qn / q, (s / p.a) * qn / q};
    for (const Complex& x : p.lower()) {
        args.push_back(p.a * q * qn / x);
    }
    return args;
}

std::vector<Complex> x2_product_args(const VwpParams& p, const Complex& s, const Complex& qn,
                                     const QContext& ctx) {
    const Complex& q = ctx.q;
    std::vector<Complex> args = {(s / p.a) * qn, s * qn * qn / q, q * qn, p.a * qn};
    for (const Complex& x : p.lower()) {
        args.push_back((x * s / p.a) * qn / q);
    }
    return args;
}

bool any_product_vanishes(const std::vector<Complex>& args, const QContext& ctx) {
    for (const Complex& x : args) {
        if (qpoch_vanishes(x, ctx)) {
            return true;
        }
    }
    return false;
}

}  // namespace

Complex RecurrenceInstance::s() const {
    if (s_exponent) {
        return ipow(ctx.q, *s_exponent);
    }
    return p.s(ctx);
}

bool RecurrenceInstance::annulus_ok() const {
    Complex sv = s();
    return qentry40::abs(sv / (p.a * ctx.q)) < 1 &&
           qentry40::abs(p.a * ctx.q * ctx.q / sv) < 1;
}

Complex coeff_a_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx) {
    const Complex& q = ctx.q;
    const Complex& a = p.a;
    Complex qn = qpow(ctx, n);
    Complex qh = sqrt(q);
    Complex sh = sqrt(s);
    Complex q2 = q * q;

    Complex top1 = (qh / (qn * sh)) * (kOne - s * qn / q) * (kOne - (s / a) * qn / q) *
                   (kOne - (s / a) * qn / q2);
    Complex prod1(1);
    for (const Complex& x : p.lower()) {
        prod1 *= kOne - (a / x) * qn * q;
    }
    top1 *= prod1 / (kOne - s * qn * qn);

    Complex top2 = (q * qh / (qn * sh)) * (kOne - qn) * (kOne - a * qn) * (kOne - a * qn * q);
    Complex prod2(1);
    for (const Complex& x : p.lower()) {
        prod2 *= kOne - (x * s / a) * qn / q2;
    }
    top2 *= prod2 / (kOne - s * qn * qn / q2);

    Complex top3 = (sh / a) * (qn / qh) * (kOne - s * qn * qn / q) * (kOne - s / (a * q2));
    for (const Complex& x : p.lower()) {
        top3 *= kOne - x;
    }

    Complex den =
        (kOne - s * qn * qn / q) * (kOne - (s / a) * qn / q2) * (kOne - a * qn * q);
    if (den.is_zero()) {
        throw Error(Error::Kind::Pole, "coefficient a_n: singular denominator");
    }
    return (top1 + top2 + top3) / den;
}

Complex coeff_b_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx) {
    const Complex& q = ctx.q;
    const Complex& a = p.a;
    Complex qn = qpow(ctx, n);
    Complex q2 = q * q;
    Complex q3 = q2 * q;

    Complex num = (q3 / (s * qn * qn)) * (kOne - qn) * (kOne - s * qn / q2);
    for (const Complex& x : p.lower()) {
        num *= kOne - (a / x) * qn;
    }
    for (const Complex& x : p.lower()) {
        num *= kOne - (x * s / a) * qn / q2;
    }

    Complex d1 = kOne - s * qn * qn / q;
    Complex d2 = kOne - s * qn * qn / q2;
    Complex d3 = kOne - s * qn * qn / q3;
    Complex den = d1 * d2 * d2 * d3;
    if (den.is_zero()) {
        throw Error(Error::Kind::Pole, "coefficient b_n: singular denominator");
    }
    return num / den;
}

namespace {

// The denominator (and paired numerator) factors that can make a coefficient
// formula indeterminate at an integer index.
bool coeff_singular(const VwpParams& p, const Complex& s, long n, const QContext& ctx,
                    bool is_a) {
    const Complex& q = ctx.q;
    Complex qn = ipow(q, n);
    std::vector<Complex> factors;
    if (is_a) {
        factors = {s * qn * qn / q, (s / p.a) * qn / (q * q), p.a * qn * q, s * qn * qn,
                   s * qn * qn / (q * q)};
    } else {
        factors = {s * qn * qn / q, s * qn * qn / (q * q), s * qn * qn / (q * q * q)};
    }
    Real tol = boost::multiprecision::ldexp(Real(1), -static_cast<int>(ctx.precision_bits) / 2);
    for (const Complex& x : factors) {
        if (qentry40::abs(kOne - x) <= tol) {
            return true;
        }
    }
    return false;
}

}  // namespace

Complex coeff_a(const RecurrenceInstance& inst, long n, LimitPath path) {
    Complex s = inst.s();
    if (path == LimitPath::Auto) {
        path = coeff_singular(inst.p, s, n, inst.ctx, true) ? LimitPath::IndexToInteger
                                                            : LimitPath::None;
    }
    switch (path) {
        case LimitPath::None:
            return coeff_a_raw(inst.p, s, Complex(n), inst.ctx);
        case LimitPath::IndexToInteger:
            return richardson_limit(
                [&](const Real& eps) {
                    return coeff_a_raw(inst.p, s, Complex(Real(n) + eps), inst.ctx);
                },
                default_limit_eps(inst.ctx));
        case LimitPath::SToPower:
            return richardson_limit(
                [&](const Real& eps) {
                    return coeff_a_raw(inst.p, s * Complex(1 + eps), Complex(n), inst.ctx);
                },
                default_limit_eps(inst.ctx));
        default:
            throw Error(Error::Kind::BadInput, "coeff_a: unsupported limit path");
    }
}

Complex coeff_b(const RecurrenceInstance& inst, long n, LimitPath path) {
    Complex s = inst.s();
    if (path == LimitPath::Auto) {
        path = coeff_singular(inst.p, s, n, inst.ctx, false) ? LimitPath::IndexToInteger
                                                             : LimitPath::None;
    }
    switch (path) {
        case LimitPath::None:
            return coeff_b_raw(inst.p, s, Complex(n), inst.ctx);
        case LimitPath::IndexToInteger:
            return richardson_limit(
                [&](const Real& eps) {
                    return coeff_b_raw(inst.p, s, Complex(Real(n) + eps), inst.ctx);
                },
                default_limit_eps(inst.ctx));
        case LimitPath::SToPower:
            return richardson_limit(
                [&](const Real& eps) {
                    return coeff_b_raw(inst.p, s * Complex(1 + eps), Complex(n), inst.ctx);
                },
                default_limit_eps(inst.ctx));
        default:
            throw Error(Error::Kind::BadInput, "coeff_b: unsupported limit path");
    }
}

Complex x1_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx,
               std::optional<long> terminate) {
    const Complex& q = ctx.q;
    Complex qn = qpow(ctx, n);
    Complex lq = log(q);
    Complex ls = log(s);
    Complex pref = exp((-(n * n) / Complex(2) + n) * lq - (n / Complex(2)) * ls);

    Complex num = qpoch_infinite(s * qn * qn / q, ctx) * qpoch_infinite(p.a * qn * q, ctx);
    Complex den = qpoch_infinite(s * qn / q, ctx) * qpoch_infinite((s / p.a) * qn / q, ctx);
    for (const Complex& x : p.lower()) {
        den *= qpoch_infinite(p.a * q * qn / x, ctx);
    }
    if (den.is_zero()) {
        throw Error(Error::Kind::Pole, "x1: product denominator vanished (use the limit path)");
    }

    std::array<Complex, 7> others = {p.b, p.c, p.d, p.e, p.f, s * qn / q, kOne / qn};
    Complex phi = eval_vwp_series(p.a, others, q, ctx, terminate);
    return pref * (num / den) * phi;
}

Complex x2_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx,
               std::optional<long> terminate) {
    const Complex& q = ctx.q;
    Complex qn = qpow(ctx, n);
    Complex lq = log(q);
    Complex ls = log(s);
    Complex pref = exp((-(n * n) / Complex(2) + n) * lq - (n / Complex(2)) * ls);

    Complex num = qpoch_infinite((s / p.a) * qn, ctx) * qpoch_infinite(s * qn * qn / q, ctx);
    Complex den = qpoch_infinite(q * qn, ctx) * qpoch_infinite(p.a * qn, ctx);
    for (const Complex& x : p.lower()) {
        den *= qpoch_infinite((x * s / p.a) * qn / q, ctx);
    }
    if (den.is_zero()) {
        throw Error(Error::Kind::Pole, "x2: product denominator vanished (use the limit path)");
    }

    std::array<Complex, 7> others = {q / p.b, q / p.c,          q / p.d,
                                     q / p.e, q / p.f,          q * q / (s * qn),
                                     q * qn};
    Complex phi = eval_vwp_series(q / p.a, others, q, ctx, terminate);
    return pref * (num / den) * phi;
}

Complex x1(const RecurrenceInstance& inst, long n) {
    if (n < 0) {
        throw Error(Error::Kind::BadInput, "x1: index must be >= 0");
    }
    Complex s = inst.s();
    Complex qn = ipow(inst.ctx.q, n);
    if (any_product_vanishes(x1_product_args(inst.p, s, qn, inst.ctx), inst.ctx)) {
        return richardson_limit(
            [&](const Real& eps) {
                return x1_raw(inst.p, s, Complex(Real(n) + eps), inst.ctx);
            },
            default_limit_eps(inst.ctx));
    }
    return x1_raw(inst.p, s, Complex(n), inst.ctx, n);
}

Complex x2(const RecurrenceInstance& inst, long n) {
    if (n < 0) {
        throw Error(Error::Kind::BadInput, "x2: index must be >= 0");
    }
    if (!inst.s_exponent || *inst.s_exponent < 1) {
        throw Error(Error::Kind::Domain, "x2 requires s = q^m with integer m >= 1");
    }
    long m = *inst.s_exponent;
    Complex s = inst.s();
    Complex qn = ipow(inst.ctx.q, n);
    if (any_product_vanishes(x2_product_args(inst.p, s, qn, inst.ctx), inst.ctx)) {
        return richardson_limit(
            [&](const Real& eps) {
                return x2_raw(inst.p, s, Complex(Real(n) + eps), inst.ctx);
            },
            default_limit_eps(inst.ctx));
    }
    std::optional<long> terminate;
    if (n + m - 2 >= 0) {
        terminate = n + m - 2;
    }
    return x2_raw(inst.p, s, Complex(n), inst.ctx, terminate);
}

Complex w1(const RecurrenceInstance& inst) { return eval_w(inst.p, inst.ctx); }

Complex w2(const RecurrenceInstance& inst) {
    return eval_w(inst.p.reflected(inst.ctx), inst.ctx);
}

Complex x3(const RecurrenceInstance& inst, long n) {
    if (!inst.annulus_ok()) {
        throw Error(Error::Kind::Domain, "x3 requires |s/q| < |a| < |s/q^2|");
    }
    return w2(inst) * x1(inst, n) - w1(inst) * x2(inst, n);
}

Real default_limit_eps(const QContext& ctx) {
    // Extrapolation error ~ eps^2, digits lost to cancellation ~ -log10(eps);
    // both balance near eps = 10^(-digits/3).
    int digits = static_cast<int>(bits_to_digits10(ctx.precision_bits));
    return pow(Real(10), -Real(digits) / 3);
}

}  // namespace qentry40
