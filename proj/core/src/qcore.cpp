#include "qentry40/qcore.hpp"

#include <vector>

namespace qentry40 {

QContext QContext::make(const Complex& q, unsigned precision_bits) {
    if (precision_bits < 64) {
        throw Error(Error::Kind::BadInput, "precision_bits must be >= 64");
    }
    if (!(qentry40::abs(q) < 1)) {
        throw Error(Error::Kind::BadInput, "|q| must be strictly less than 1");
    }
    QContext ctx;
    ctx.q = q;
    ctx.precision_bits = precision_bits;
    // Truncation must dominate rounding: keep the thresholds a few bits above
    // one ulp at the working precision.
    Real tol = boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits) + 8);
    ctx.product_tol = tol;
    ctx.series_tol = tol;
    return ctx;
}

QContext QContext::with_base(const Complex& new_q) const {
    QContext ctx(*this);
    if (!(qentry40::abs(new_q) < 1)) {
        throw Error(Error::Kind::BadInput, "|q| must be strictly less than 1");
    }
    ctx.q = new_q;
    return ctx;
}

Complex qpoch_finite(const Complex& x, const QContext& ctx, long n) {
    if (n < 0) {
        throw Error(Error::Kind::BadInput, "qpoch_finite requires n >= 0");
    }
    Complex prod(1);
    Complex xqk = x;
    for (long k = 0; k < n; ++k) {
        prod *= Complex(1) - xqk;
        xqk *= ctx.q;
    }
    return prod;
}

Complex qpoch_infinite(const Complex& x, const QContext& ctx, ProductInfo* info) {
    Complex prod(1);
    Complex xqm = x;
    Real absq = ctx.abs_q();
    long m = 0;
    while (true) {
        if (m >= ctx.max_terms) {
            throw Error(Error::Kind::NonConvergence,
                        "qpoch_infinite: factor cap exceeded before tail threshold");
        }
        Real mag = qentry40::abs(xqm);
        if (mag < ctx.product_tol && m >= 8) {
            if (info) {
                // |log tail| <= sum_{j>=m} |x q^j| <= |x q^m| / (1 - |q|).
                info->rel_error = 2 * mag / (1 - absq);
                info->factors = m;
            }
            return prod;
        }
        prod *= Complex(1) - xqm;
        if (prod.is_zero()) {
            // x = q^-m exactly; every later factor leaves the product at zero.
            if (info) {
                info->rel_error = Real(0);
                info->factors = m + 1;
            }
            return prod;
        }
        xqm *= ctx.q;
        ++m;
    }
}

Complex qpoch_multi(std::span<const Complex> xs, const QContext& ctx) {
    Complex prod(1);
    for (const Complex& x : xs) {
        prod *= qpoch_infinite(x, ctx);
    }
    return prod;
}

Complex qpoch_multi(std::initializer_list<Complex> xs, const QContext& ctx) {
    return qpoch_multi(std::span<const Complex>(xs.begin(), xs.size()), ctx);
}

Complex g_inverse(const Complex& x, const QContext& ctx) {
    QContext squared = ctx.with_base(ctx.q * ctx.q);
    return qpoch_infinite(x * ctx.q, squared);
}

Complex qpow(const QContext& ctx, const Complex& t) {
    return pow(ctx.q, t);
}

Complex qpow(const QContext& ctx, const Real& t) {
    return pow(ctx.q, Complex(t));
}

std::optional<long> match_qpower(const Complex& x, const QContext& ctx, long lo, long hi) {
    if (x.is_zero()) {
        return std::nullopt;
    }
    Real tol = boost::multiprecision::ldexp(Real(1), -static_cast<int>(ctx.precision_bits) / 2);
    for (long k = lo; k <= hi; ++k) {
        Complex qk = ipow(ctx.q, k);
        if (qentry40::abs(x - qk) <= tol * qentry40::abs(qk)) {
            return k;
        }
    }
    return std::nullopt;
}

bool qpoch_vanishes(const Complex& x, const QContext& ctx, long max_j) {
    return match_qpower(x, ctx, -max_j, 0).has_value();
}

}  // namespace qentry40
