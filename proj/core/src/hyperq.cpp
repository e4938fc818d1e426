#include "qentry40/hyperq.hpp"

namespace qentry40 {

namespace {

struct RatioParts {
    Complex num;  // product of the numerator factors of t_{k+1}/t_k (incl. z)
    Complex den;  // product of the denominator factors
};

// Shared forward summation: t_0 = 1, t_{k+1} = t_k * num_k / den_k, with
// compensated accumulation and a geometric tail bound.
template <typename RatioFn>
Complex sum_series(RatioFn&& ratio_at, const QContext& ctx, std::optional<long> terminate,
                   SeriesInfo* info) {
    Complex sum(1);
    Complex comp(0);  // Kahan compensation
    Complex term(1);
    long consecutive_small = 0;
    const long min_terms = 32;

    for (long k = 0;; ++k) {
        if (terminate && k >= *terminate) {
            if (info) {
                info->terms = k + 1;
                info->tail_estimate = Real(0);
            }
            return sum + comp;
        }
        if (k >= ctx.max_terms) {
            throw Error(Error::Kind::NonConvergence, "phi series: term cap exceeded");
        }
        RatioParts r = ratio_at(k);
        if (r.num.is_zero()) {
            // A numerator parameter reached q^-k: the series terminates here.
            if (info) {
                info->terms = k + 1;
                info->tail_estimate = Real(0);
            }
            return sum + comp;
        }
        if (r.den.is_zero()) {
            throw Error(Error::Kind::Pole,
                        "phi series: denominator parameter pole before termination");
        }
        term *= r.num / r.den;

        // Kahan step.
        Complex y = term - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        if (!terminate && k + 1 >= min_terms) {
            Real rho = qentry40::abs(r.num) / qentry40::abs(r.den);
            if (rho < Real(0.99)) {
                Real tail = qentry40::abs(term) * rho / (1 - rho);
                if (tail <= ctx.series_tol * qentry40::abs(sum)) {
                    if (++consecutive_small >= 2) {
                        if (info) {
                            info->terms = k + 2;
                            info->tail_estimate = tail;
                        }
                        return sum + comp;
                    }
                } else {
                    consecutive_small = 0;
                }
            } else {
                consecutive_small = 0;
            }
        }
    }
}

}  // namespace

Complex eval_phi_generic(const PhiSpec& spec, const QContext& ctx, SeriesInfo* info) {
    const long excess =
        static_cast<long>(spec.den.size()) + 1 - static_cast<long>(spec.num.size());
    Complex qk(1);  // q^k
    auto ratio = [&](long k) {
        (void)k;
        Complex num = spec.z;
        for (const Complex& alpha : spec.num) {
            num *= Complex(1) - alpha * qk;
        }
        if (excess != 0) {
            num *= ipow(-qk, excess);
        }
        Complex den = Complex(1) - qk * ctx.q;
        for (const Complex& beta : spec.den) {
            den *= Complex(1) - beta * qk;
        }
        qk *= ctx.q;
        return RatioParts{num, den};
    };
    return sum_series(ratio, ctx, spec.terminate_after, info);
}

Complex eval_vwp_series(const Complex& a, std::span<const Complex> others, const Complex& z,
                        const QContext& ctx, std::optional<long> terminate, SeriesInfo* info) {
    const Complex q2 = ctx.q * ctx.q;
    Complex qk(1);   // q^k
    Complex q2k(1);  // q^{2k}
    auto ratio = [&](long k) {
        (void)k;
        Complex num = z * (Complex(1) - a * q2k * q2);
        Complex den = Complex(1) - a * q2k;
        num *= Complex(1) - a * qk;  // the (a; q)_k factor
        den *= Complex(1) - qk * ctx.q;
        for (const Complex& x : others) {
            num *= Complex(1) - x * qk;
            den *= Complex(1) - (a * ctx.q / x) * qk;
        }
        qk *= ctx.q;
        q2k *= q2;
        return RatioParts{num, den};
    };
    return sum_series(ratio, ctx, terminate, info);
}

Complex VwpParams::s(const QContext& ctx) const {
    return ipow(a, 3) * ipow(ctx.q, 3) / (b * c * d * e * f);
}

VwpParams VwpParams::reflected(const QContext& ctx) const {
    const Complex& q = ctx.q;
    return VwpParams{q / a, q / b, q / c, q / d, q / e, q / f};
}

bool Vwp10phi9Instance::balanced(const QContext& ctx) const {
    Complex lhs = ipow(p.a, 3) * ctx.q * ctx.q;
    Complex rhs = p.b * p.c * p.d * p.e * p.f * g * h;
    Real tol = boost::multiprecision::ldexp(Real(1), -static_cast<int>(ctx.precision_bits) + 16);
    return qentry40::abs(lhs - rhs) <= tol * qentry40::abs(lhs);
}

Complex eval_10phi9(const Vwp10phi9Instance& inst, const QContext& ctx) {
    if (!inst.balanced(ctx)) {
        throw Error(Error::Kind::BadInput, "10phi9: balance a^3 q^2 = bcdefgh violated");
    }
    std::optional<long> terminate = inst.n;
    if (!terminate) {
        std::array<Complex, 7> others = {inst.p.b, inst.p.c, inst.p.d, inst.p.e,
                                         inst.p.f, inst.g,   inst.h};
        for (const Complex& x : others) {
            if (auto k = match_qpower(x, ctx, -64, 0)) {
                terminate = -*k;
                break;
            }
        }
    }
    if (!terminate) {
        throw Error(Error::Kind::Domain, "10phi9: non-terminating instances are unsupported");
    }
    std::array<Complex, 7> others = {inst.p.b, inst.p.c, inst.p.d, inst.p.e,
                                     inst.p.f, inst.g,   inst.h};
    return eval_vwp_series(inst.p.a, others, ctx.q, ctx, terminate);
}

Complex phi10_9(const Complex& a, const std::array<Complex, 7>& others, const QContext& ctx,
                std::optional<long> terminate) {
    return eval_vwp_series(a, others, ctx.q, ctx, terminate);
}

Complex eval_w(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
               const Complex& e, const Complex& f, const QContext& ctx) {
    std::array<Complex, 5> others = {b, c, d, e, f};
    Complex z = a * a * ctx.q * ctx.q / (b * c * d * e * f);
    std::optional<long> terminate;
    for (const Complex& x : others) {
        if (auto k = match_qpower(x, ctx, -64, 0)) {
            terminate = -*k;
            break;
        }
    }
    if (!terminate && !(qentry40::abs(z) < 1)) {
        throw Error(Error::Kind::Domain,
                    "8phi7: non-terminating series with |a^2 q^2 / bcdef| >= 1");
    }
    return eval_vwp_series(a, others, z, ctx, terminate);
}

Complex eval_w(const VwpParams& p, const QContext& ctx) {
    return eval_w(p.a, p.b, p.c, p.d, p.e, p.f, ctx);
}

Complex eval_wtilde(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                    const Complex& e, const Complex& f, const QContext& ctx) {
    Complex aq = a * ctx.q;
    Complex prefactor = qpoch_multi({aq / b, aq / c, aq / d, aq / e, aq / f}, ctx);
    return prefactor * eval_w(a, b, c, d, e, f, ctx);
}

Complex eval_wtilde(const VwpParams& p, const QContext& ctx) {
    return eval_wtilde(p.a, p.b, p.c, p.d, p.e, p.f, ctx);
}

Complex eval_u(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
               const Complex& e, const Complex& f, const QContext& ctx) {
    for (const Complex& x : {a * ctx.q, b, c, d, e, f}) {
        if (qpoch_vanishes(x, ctx)) {
            throw Error(Error::Kind::Pole, "U: a parameter equals q^-k, denominator vanishes");
        }
    }
    Complex den = qpoch_multi({a * ctx.q, b, c, d, e, f}, ctx);
    return eval_wtilde(a, b, c, d, e, f, ctx) / den;
}

Complex eval_u(const VwpParams& p, const QContext& ctx) {
    return eval_u(p.a, p.b, p.c, p.d, p.e, p.f, ctx);
}

}  // namespace qentry40
