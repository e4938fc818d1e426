#include "qentry40/contfrac.hpp"

#include <algorithm>

namespace qentry40 {

namespace {

const Complex kOne(1);
const Complex kTwo(2);

// z^t + z^-t and its difference companions, principal branches throughout.
Complex ph(const Complex& z, const Real& t) { return pow(z, t) + pow(z, -t); }
Complex pm(const Complex& z, const Real& t) { return pow(z, t) - pow(z, -t); }
// z^-t - z^t (the order several displays use)
Complex mh(const Complex& z, const Real& t) { return pow(z, -t) - pow(z, t); }

Real half(long n) { return Real(n) / 2; }

// Round a value computed under an elevated PrecisionScope back down to the
// precision in effect now.
Complex to_working(const Complex& z) {
    Real re;
    re = z.re();
    Real im;
    im = z.im();
    return Complex(re, im);
}

Real real_to_working(const Real& x) {
    Real r;
    r = x;
    return r;
}

}  // namespace

CfResult eval_cf(const CFSpec& spec, const QContext& ctx, std::optional<Real> threshold,
                 long max_depth) {
    Real thr = threshold ? *threshold
                         : pow(Real(10), -Real(35) * Real(ctx.precision_bits) / 256);
    Real zero_tol =
        boost::multiprecision::ldexp(Real(1), -static_cast<int>(ctx.precision_bits) / 2);
    Complex sgn = spec.sign == CfSign::Minus ? Complex(-1) : Complex(1);

    // Convergents of b0 + K(a_k/b_k) with b0 = 0: A_k = b_k A_{k-1} + a_k A_{k-2}.
    Complex A_prev(1), A_cur(0);
    Complex B_prev(0), B_cur(1);
    Complex prev_value;
    bool have_prev = false;
    long small_streak = 0;
    CfResult out;
    long depth_cap = spec.depth ? std::min(*spec.depth, max_depth) : max_depth;

    for (long k = 1; k <= depth_cap; ++k) {
        Complex a_k = (k == 1) ? spec.leading : sgn * spec.num(k - 1);
        Complex b_k = spec.den(k - 1);
        if (k > 1 && qentry40::abs(a_k) <= zero_tol) {
            out.converged = true;  // vanishing partial numerator: terminated
            break;
        }
        Complex A_next = b_k * A_cur + a_k * A_prev;
        Complex B_next = b_k * B_cur + a_k * B_prev;
        A_prev = A_cur;
        A_cur = A_next;
        B_prev = B_cur;
        B_cur = B_next;
        out.depth = k;

        Real scale = qentry40::abs(B_cur);
        if (scale > Real(1e30) || (scale > 0 && scale < Real(1e-30))) {
            Complex inv(Real(1) / scale);
            A_prev *= inv;
            A_cur *= inv;
            B_prev *= inv;
            B_cur *= inv;
        }

        if (!B_cur.is_zero()) {
            Complex value = A_cur / B_cur;
            if (have_prev) {
                Real floor = boost::multiprecision::ldexp(
                    Real(1), -static_cast<int>(ctx.precision_bits));
                out.delta = qentry40::abs(value - prev_value) /
                            (qentry40::abs(value) + floor);
                if (out.delta < thr) {
                    if (++small_streak >= 2 && k >= 5) {
                        out.converged = true;
                        break;
                    }
                } else {
                    small_streak = 0;
                }
            }
            prev_value = value;
            have_prev = true;
        }
    }
    if (spec.depth && out.depth >= depth_cap) {
        out.converged = true;  // terminating fraction evaluated in full
    }
    if (B_cur.is_zero()) {
        throw Error(Error::Kind::Indeterminate,
                    "continued fraction: indeterminate at final depth");
    }
    out.value = A_cur / B_cur;
    return out;
}

CFSpec recurrence_cf(const RecurrenceInstance& inst) {
    CFSpec cf;
    cf.leading = kOne;
    cf.num = [inst](long n) { return coeff_b(inst, n); };
    cf.den = [inst](long n) { return coeff_a(inst, n); };
    cf.sign = CfSign::Minus;
    return cf;
}

CFSpec recurrence_cf_slimit(const RecurrenceInstance& inst) {
    CFSpec cf = recurrence_cf(inst);
    long m = inst.s_exponent.value_or(0);
    if (m == 1 || m == 2) {
        Complex a0 = coeff_a(inst, 0, LimitPath::SToPower);
        Complex b1 = coeff_b(inst, 1, LimitPath::SToPower);
        auto num0 = cf.num;
        auto den0 = cf.den;
        cf.num = [b1, num0](long n) { return n == 1 ? b1 : num0(n); };
        cf.den = [a0, den0](long n) { return n == 0 ? a0 : den0(n); };
    }
    return cf;
}

Complex theorem4_rhs(const RecurrenceInstance& inst) {
    if (!inst.annulus_ok()) {
        throw Error(Error::Kind::Domain, "theorem4_rhs requires |s/q| < |a| < |s/q^2|");
    }
    Complex W1 = w1(inst);
    Complex W2 = w2(inst);
    Complex s = inst.s();
    const VwpParams& p = inst.p;
    const QContext& ctx = inst.ctx;
    auto f = [&](const Real& eps) {
        Complex n(eps);
        Complex nm1(eps - 1);
        Complex num = W2 * x1_raw(p, s, n, ctx) - W1 * x2_raw(p, s, n, ctx);
        Complex den = coeff_b_raw(p, s, n, ctx) *
                      (W2 * x1_raw(p, s, nm1, ctx) - W1 * x2_raw(p, s, nm1, ctx));
        return num / den;
    };
    return richardson_limit(f, default_limit_eps(ctx));
}

// ---- s = q^2 ----

Complex corollary7_a(const EntryParams& p, const QContext& ctx) {
    return sqrt(ctx.q * p.alpha * p.beta * p.gamma * p.delta * p.epsilon);
}

VwpParams corollary7_vwp(const EntryParams& p, const QContext& ctx) {
    Complex a = corollary7_a(p, ctx);
    return VwpParams{a, a / p.alpha, a / p.beta, a / p.gamma, a / p.delta, a / p.epsilon};
}

Complex corollary7_V(const EntryParams& p, const QContext& ctx) {
    VwpParams w = corollary7_vwp(p, ctx);
    const Complex& q = ctx.q;
    Complex pref = qpoch_infinite(q / w.a, ctx) * qpoch_infinite(q * q / w.a, ctx) /
                   (qpoch_infinite(w.a, ctx) * qpoch_infinite(w.a * q, ctx));
    return pref * eval_wtilde(w, ctx) / eval_wtilde(w.reflected(ctx), ctx);
}

Complex corollary7_rhs(const EntryParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    Complex a = corollary7_a(p, ctx);
    Complex V = corollary7_V(p, ctx);
    if (qentry40::abs(kOne + V) < Real(1e-20)) {
        throw Error(Error::Kind::Pole, "corollary7_rhs: V = -1 pole of the fraction");
    }
    Complex den = pow(q, Real(3) / 2);
    for (const Complex& x : p.all()) {
        den *= kOne - x;
    }
    return kTwo * a * (kOne - q) / den * (kOne - V) / (kOne + V);
}

namespace {

Complex cor7_a_n(const EntryParams& p, const Complex& q, long n) {
    Complex prod_half(1);
    Complex sum_inv(2);
    for (const Complex& x : p.all()) {
        prod_half *= ph(x, half(1));
        sum_inv += x + kOne / x;
    }
    Complex qh = pow(q, half(1));
    Complex d1 = ph(q, half(n));
    Complex d2 = ph(q, half(n + 1));
    Complex num = qh * prod_half + qh * ph(q, half(1)) * ph(q, Real(n) + half(1)) * d1 * d2 -
                  qh * sum_inv * d1 * d2;
    return num / (d1 * d2);
}

Complex cor7_b_n(const EntryParams& p, const Complex& q, long n) {
    Complex qn = ipow(q, n);
    Complex prod(1);
    for (const Complex& x : p.all()) {
        prod *= x + kOne / x - qn - kOne / qn;
    }
    Complex den = ph(q, half(n)) * ph(q, half(n)) * mh(q, Real(n) + half(1)) *
                  mh(q, Real(n) - half(1));
    return -q * prod / den;
}

}  // namespace

CFSpec corollary7_cf(const EntryParams& p, const QContext& ctx) {
    CFSpec cf;
    cf.leading = kOne;
    Complex q = ctx.q;
    cf.num = [p, q](long n) { return cor7_b_n(p, q, n); };
    cf.den = [p, q](long n) { return cor7_a_n(p, q, n); };
    cf.sign = CfSign::Minus;
    return cf;
}

namespace {

// The eight even and eight odd sign combinations of Watson's products.
std::array<Complex, 8> even_combos(const EntryParams& p) {
    const Complex &a = p.alpha, &b = p.beta, &g = p.gamma, &d = p.delta, &e = p.epsilon;
    return {a * b * g * d * e, a * b * g / (d * e), a * b * d / (g * e),
            a * g * d / (b * e), a * b * e / (g * d), a * g * e / (b * d),
            a * d * e / (b * g), a / (b * g * d * e)};
}

std::array<Complex, 8> odd_combos(const EntryParams& p) {
    const Complex &a = p.alpha, &b = p.beta, &g = p.gamma, &d = p.delta, &e = p.epsilon;
    return {a * b * g * d / e, a * b * g * e / d, a * b * d * e / g,
            a * g * d * e / b, a * b / (g * d * e), a * g / (b * d * e),
            a * d / (b * g * e), a * e / (b * g * d)};
}

}  // namespace

WatsonProducts watson_products(const EntryParams& p, const QContext& ctx) {
    WatsonProducts out;
    {
        PrecisionScope scope(2 * ctx.precision_bits);
        QContext hi = QContext::make(ctx.q, 2 * ctx.precision_bits);
        Complex P(1), Q(1);
        for (const Complex& x : even_combos(p)) {
            P /= g_inverse(x, hi);
        }
        for (const Complex& x : odd_combos(p)) {
            Q /= g_inverse(x, hi);
        }
        Real denom = qentry40::abs(P + Q);
        Real cond = denom.is_zero() ? Real(0) : (qentry40::abs(P) + qentry40::abs(Q)) / denom;
        out.P = to_working(P);
        out.Q = to_working(Q);
        out.condition = real_to_working(cond);
    }
    return out;
}

CFSpec watson_cf(const EntryParams& p, long n_terminate, const QContext& ctx) {
    Complex q = ctx.q;
    Complex A0 = q + kOne / q;
    for (const Complex& x : p.all()) {
        A0 *= x - kOne / x;
    }
    EntryParams pp = p;
    CFSpec cf;
    cf.leading = A0;
    cf.num = [pp, q](long m) {
        Complex v = ph(q, Real(m + 1)) * ph(q, Real(m - 1));
        Complex q2m = ipow(q, 2 * m);
        for (const Complex& x : pp.all()) {
            Complex x2 = x * x;
            v *= x2 + kOne / x2 - q2m - kOne / q2m;
        }
        return v;
    };
    cf.den = [pp, q](long m) {
        Complex sum2(2);
        Complex prod(1);
        for (const Complex& x : pp.all()) {
            Complex x2 = x * x;
            sum2 += x2 + kOne / x2;
            prod *= x + kOne / x;
        }
        Complex pm1 = ph(q, Real(m));
        Complex pm2 = ph(q, Real(m + 1));
        Complex pm3 = ph(q, Real(2 * m + 1));
        return pm(q, Real(2 * m + 1)) *
               (pm1 * pm2 * sum2 - prod - (q + kOne / q) * pm1 * pm2 * pm3);
    };
    cf.sign = CfSign::Plus;
    cf.depth = n_terminate;
    return cf;
}

PairResult watson_theoremA(const EntryParams& p, long n_terminate, const QContext& ctx) {
    WatsonProducts wp = watson_products(p, ctx);
    PairResult out;
    out.condition = wp.condition;
    if ((wp.P + wp.Q).is_zero()) {
        throw Error(Error::Kind::Pole, "watson_theoremA: P + Q vanishes");
    }
    out.lhs = (wp.P - wp.Q) / (wp.P + wp.Q);
    out.rhs = eval_cf(watson_cf(p, n_terminate, ctx), ctx).value;
    return out;
}

WatsonProducts corollary7_products(const EntryParams& p, const QContext& ctx) {
    // Same sixteen theta-like products as Watson's theorem; the terminating
    // form of the s = q^2 fraction is stated in exactly this convention.
    return watson_products(p, ctx);
}

Complex corollary7_terminating_rhs(const EntryParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    WatsonProducts wp = corollary7_products(p, ctx);
    Complex den = q;
    for (const Complex& x : p.all()) {
        den *= x - kOne / x;
    }
    return kTwo * (kOne / q - q) / den * (wp.P - wp.Q) / (wp.P + wp.Q);
}

// ---- s = q ----

Complex corollary8_a(const EntryParams& p, const QContext& ctx) {
    return pow(p.alpha * p.beta * p.gamma * p.delta * p.epsilon / ctx.q, Real(1) / 4);
}

VwpParams corollary8_vwp(const EntryParams& p, const QContext& ctx) {
    Complex a = corollary8_a(p, ctx);
    const Complex& q = ctx.q;
    return VwpParams{a,
                     a * sqrt(q / p.alpha),
                     a * sqrt(q / p.beta),
                     a * sqrt(q / p.gamma),
                     a * sqrt(q / p.delta),
                     a * sqrt(q / p.epsilon)};
}

Complex corollary8_wratio(const EntryParams& p, const QContext& ctx) {
    VwpParams w = corollary8_vwp(p, ctx);
    return eval_wtilde(w, ctx) / eval_wtilde(w.reflected(ctx), ctx);
}

namespace {

Complex cor8_a_n(const EntryParams& p, const Complex& q, long n) {
    Complex sum_half(0);
    Complex prod_qp(1), prod_qm(1);
    for (const Complex& x : p.all()) {
        sum_half += ph(x, half(1));
        prod_qp *= ph(x, Real(1) / 4);
        prod_qm *= pm(x, Real(1) / 4);
    }
    Real quarter = Real(1) / 4;
    Complex qq_p = ph(q, quarter);
    Complex qq_m = pm(q, quarter);
    Complex qh_p = ph(q, half(1));

    Complex brace = ph(q, Real(3 * n)) * qh_p;
    brace -= ph(q, Real(2 * n)) * (qh_p + sum_half);
    Complex halfc(Real(1) / 2);
    brace += ph(q, Real(n)) *
             (-ph(q, Real(3) / 2) + halfc * (qq_p * prod_qp + qq_m * prod_qm));
    brace += (q + kOne / q) * qh_p;
    brace += (q + kOne / q) * sum_half;
    brace -= halfc * qq_p * qh_p * prod_qp;
    brace += halfc * qq_m * qh_p * prod_qm;

    Complex pref = pow(q, half(1)) / (mh(q, Real(n) + half(1)) * mh(q, Real(n) - half(1)));
    return pref * brace;
}

Complex cor8_b_n(const EntryParams& p, const Complex& q, long n) {
    Complex prod = q;
    for (const Complex& x : p.all()) {
        prod *= ph(q, Real(n) - half(1)) - ph(x, half(1));
    }
    Complex den = ph(q, half(n)) * ph(q, half(n - 1)) * pm(q, Real(n) - half(1)) *
                  pm(q, Real(n) - half(1));
    return prod / den;
}

}  // namespace

CFSpec corollary8_cf(const EntryParams& p, const QContext& ctx) {
    CFSpec cf;
    cf.leading = kOne;
    Complex q = ctx.q;
    cf.num = [p, q](long n) { return cor8_b_n(p, q, n); };
    cf.den = [p, q](long n) { return cor8_a_n(p, q, n); };
    cf.sign = CfSign::Minus;
    return cf;
}

Complex corollary8_rhs(const EntryParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    Complex a = corollary8_a(p, ctx);
    Complex a0 = cor8_a_n(p, q, 0);
    Complex inv_a = qpoch_infinite(kOne / a, ctx);
    Complex Z = (a * a / q) * inv_a * inv_a /
                (qpoch_infinite(a * q, ctx) * qpoch_infinite(a / q, ctx)) *
                corollary8_wratio(p, ctx);
    return kTwo / (a0 + Z);
}

namespace {

std::array<Complex, 8> companion_q_combos(const EntryParams& p, const Complex& q) {
    auto od = odd_combos(p);
    for (Complex& x : od) {
        x *= q;
    }
    return od;
}

std::array<Complex, 8> companion_q3_combos(const EntryParams& p, const Complex& q) {
    auto ev = even_combos(p);
    Complex q3 = q * q * q;
    for (Complex& x : ev) {
        x *= q3;
    }
    return ev;
}

}  // namespace

CompanionProducts corollary8_products(const EntryParams& p, const QContext& ctx) {
    CompanionProducts out;
    {
        PrecisionScope scope(2 * ctx.precision_bits);
        Complex q2 = ctx.q * ctx.q;
        QContext hi = QContext::make(ctx.q, 2 * ctx.precision_bits).with_base(q2 * q2);
        auto pa = companion_q3_combos(p, ctx.q);
        auto qa = companion_q_combos(p, ctx.q);
        Complex Pp = kOne / qpoch_multi(std::span<const Complex>(pa), hi);
        Complex Qp = kOne / qpoch_multi(std::span<const Complex>(qa), hi);
        Real cond = Qp.is_zero() ? Real(0) : qentry40::abs(Pp) / qentry40::abs(Qp);
        out.Pp = to_working(Pp);
        out.Qp = to_working(Qp);
        out.condition = real_to_working(cond);
    }
    return out;
}

Complex corollary8_terminating_rhs(const EntryParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    Complex q4 = q * q * q * q;
    EntryParams p4{ipow(p.alpha, 4), ipow(p.beta, 4), ipow(p.gamma, 4), ipow(p.delta, 4),
                   ipow(p.epsilon, 4)};
    Complex a0 = cor8_a_n(p4, q4, 0);
    CompanionProducts cp = corollary8_products(p, ctx);
    Complex ratio = (q * q) / (p.alpha * p.alpha);
    return kTwo / (a0 - ratio * cp.Pp / cp.Qp);
}

Complex corollary8_companion_value(const EntryParams& p, const QContext& ctx) {
    CompanionProducts cp = corollary8_products(p, ctx);
    const Complex& q = ctx.q;
    return -(p.alpha * p.alpha) / (q * q) * cp.Qp / cp.Pp;
}

// ---- Remark 2 ----

Complex remark2_approximant(const RecurrenceInstance& inst, long n) {
    if (!inst.s_exponent || *inst.s_exponent != 1) {
        throw Error(Error::Kind::Domain, "remark2_approximant requires s = q");
    }
    return x2(inst, n + 1) * x1(inst, 0) / (kTwo * x1(inst, n + 1) * x2(inst, 1));
}

Complex remark2_rhs(const RecurrenceInstance& inst) {
    if (!inst.s_exponent || *inst.s_exponent != 1) {
        throw Error(Error::Kind::Domain, "remark2_rhs requires s = q");
    }
    const Complex& q = inst.ctx.q;
    const Complex& a = inst.p.a;
    Complex inv_a = qpoch_infinite(kOne / a, inst.ctx);
    Complex wt1 = eval_wtilde(inst.p, inst.ctx);
    Complex wt2 = eval_wtilde(inst.p.reflected(inst.ctx), inst.ctx);
    return q * qpoch_infinite(a * q, inst.ctx) * qpoch_infinite(a / q, inst.ctx) /
           (a * a * inv_a * inv_a) * wt2 / wt1;
}

// ---- s = q^m ----

namespace {

Complex corollary9_impl(const VwpParams& p, const Complex& m, const QContext& ctx,
                        std::optional<long> terminate) {
    const Complex& q = ctx.q;
    const Complex& a = p.a;
    Complex qm = qpow(ctx, m);
    Complex qm1 = qm / q;  // q^{m-1}
    Complex pref = qpow(ctx, (m - Complex(3)) / kTwo) * (kOne - qm1) * (kOne - a / q);
    Complex den = kOne - qm1 / a;
    for (const Complex& x : p.lower()) {
        den *= kOne - a / x;
    }

    std::array<Complex, 7> others = {q / p.b, q / p.c, q / p.d, q / p.e,
                                     q / p.f, q * q / qm, q};
    Complex phi = eval_vwp_series(q / a, others, q, ctx, terminate);

    Complex wt1 = eval_wtilde(p, ctx);
    Complex wt2 = eval_wtilde(p.reflected(ctx), ctx);
    Complex prod_num = qpoch_multi({a, a * q, q}, ctx);
    Complex prod_den = qpoch_multi({qm / a, qm1 / a, qm}, ctx);
    Complex ratio(1);
    for (const Complex& x : p.lower()) {
        ratio *= qpoch_infinite(x * qm1 / a, ctx) / qpoch_infinite(x * q / a, ctx);
    }
    Complex t2 = (wt2 / wt1) * (prod_num / prod_den) / (kOne - qm1) * ratio;
    return pref / den * (phi - t2);
}

}  // namespace

Complex corollary9_rhs_m(const VwpParams& p, const Complex& m, const QContext& ctx) {
    return corollary9_impl(p, m, ctx, std::nullopt);
}

Complex corollary9_rhs(const VwpParams& p, long m, const QContext& ctx) {
    if (m < 3) {
        throw Error(Error::Kind::Domain, "corollary9_rhs requires s = q^m with m >= 3");
    }
    return corollary9_impl(p, Complex(m), ctx, m - 2);
}

Complex corollary9_s_to_q(const VwpParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    const Complex& a = p.a;
    Complex wt1 = eval_wtilde(p, ctx);
    Complex wt2 = eval_wtilde(p.reflected(ctx), ctx);
    Complex inv_a = qpoch_infinite(kOne / a, ctx);
    return q / (a * a) * wt2 / wt1 * qpoch_infinite(a / q, ctx) *
           qpoch_infinite(a * q, ctx) / (inv_a * inv_a);
}

Complex corollary9_s_to_q2(const VwpParams& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    const Complex& a = p.a;
    Complex den(1);
    for (const Complex& x : p.lower()) {
        den *= kOne - a / x;
    }
    Complex wt1 = eval_wtilde(p, ctx);
    Complex wt2 = eval_wtilde(p.reflected(ctx), ctx);
    Complex bracket = kOne - qpoch_infinite(a, ctx) * qpoch_infinite(a * q, ctx) /
                                 (qpoch_infinite(q * q / a, ctx) *
                                  qpoch_infinite(q / a, ctx)) *
                                 wt2 / wt1;
    return -a / pow(q, Real(3) / 2) * (kOne - q) / den * bracket;
}

// ---- Remark 3 ----

namespace {

Complex remark3_c_n(const Remark3Params& p, const Complex& q, long n) {
    Complex qn = ipow(q, n);
    Complex bcde = p.b * p.c * p.d * p.e;
    Complex t1(-1);
    for (const Complex& x : p.lower()) {
        t1 *= kOne - (p.a / x) * qn * q;
    }
    Complex t2 = -q * (kOne - qn) * (kOne - p.a * qn) * (kOne - p.a * qn * q) *
                 (kOne - p.a * p.a * qn * q / bcde);
    Complex t3 = p.a * p.a * qn * qn * q * q;
    for (const Complex& x : p.lower()) {
        t3 *= kOne - x;
    }
    t3 /= bcde;
    return (t1 + t2 + t3) / (kOne - p.a * qn * q);
}

Complex remark3_d_n(const Remark3Params& p, const Complex& q, long n) {
    Complex qn = ipow(q, n);
    Complex bcde = p.b * p.c * p.d * p.e;
    Complex v = q * (kOne - qn) * (kOne - p.a * p.a * qn * q / bcde);
    for (const Complex& x : p.lower()) {
        v *= kOne - (p.a / x) * qn;
    }
    return v;
}

Complex phi32(const Complex& u1, const Complex& u2, const Complex& u3, const Complex& v1,
              const Complex& v2, const Complex& z, const QContext& ctx) {
    PhiSpec spec;
    spec.num = {u1, u2, u3};
    spec.den = {v1, v2};
    spec.z = z;
    return eval_phi_generic(spec, ctx);
}

}  // namespace

CFSpec remark3_cf(const Remark3Params& p, const QContext& ctx) {
    CFSpec cf;
    cf.leading = kOne;
    Complex q = ctx.q;
    cf.num = [p, q](long n) { return remark3_d_n(p, q, n); };
    cf.den = [p, q](long n) { return remark3_c_n(p, q, n); };
    cf.sign = CfSign::Minus;
    return cf;
}

Complex remark3_R(const Remark3Params& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    const Complex &a = p.a, &b = p.b, &c = p.c, &d = p.d, &e = p.e;
    if (qentry40::abs(b) >= 1) {
        throw Error(Error::Kind::Domain, "remark3_R requires |b| < 1");
    }
    Complex a2 = a * a;
    Complex cde = c * d * e;
    Complex bcde = b * cde;

    Complex front = qpoch_multi({q, a, q * q / a, d * e / a, d * c / a, e * c / a}, ctx) /
                    qpoch_multi({d * q / a, e * q / a, c * q / a, d * e * c / (a * q),
                                 a * q / b, b},
                                ctx);

    Complex s1 = phi32(q / d, q / e, q / c, q * b / a, q * q * a / cde, b, ctx);

    Complex mid =
        qpoch_multi({q / d, q / e, q / c, bcde / a2, a * q / b, b / a, cde / a2,
                     a2 * q / cde, d * e * c / (a * q)},
                    ctx) /
        qpoch_multi({e * c / a, q * b / a, q * a / cde, q / a, a, bcde / (q * a2),
                     a2 * q * q / bcde, d * e / a, d * c / a},
                    ctx);

    Complex s2 = phi32(d * e / a, d * c / a, e * c / a, bcde / a2, d * e * c / a, b, ctx);

    Complex bottom = phi32(a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / b,
                           a2 * q * q / bcde, b, ctx);
    if (bottom.is_zero()) {
        throw Error(Error::Kind::Pole, "remark3_R: denominator series vanishes");
    }
    return front * (s1 + mid * s2) / bottom;
}

Complex remark3_rhs(const Remark3Params& p, const QContext& ctx) {
    const Complex& q = ctx.q;
    Complex den = q;
    for (const Complex& x : p.lower()) {
        den *= kOne - p.a / x;
    }
    Complex w = eval_w(q / p.a, q / p.b, q / p.c, q / p.d, q / p.e, q, ctx);
    return (p.a / q - kOne) / den * (w - remark3_R(p, ctx));
}

}  // namespace qentry40
