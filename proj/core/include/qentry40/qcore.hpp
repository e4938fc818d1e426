#pragma once

#include "qentry40/errors.hpp"
#include "qentry40/hp.hpp"

#include <initializer_list>
#include <optional>
#include <span>

namespace qentry40 {

/// Evaluation context: base q with |q| < 1, working precision, and the
/// truncation thresholds that govern every series and infinite product.
struct QContext {
    Complex q;
    unsigned precision_bits = 256;
    Real product_tol;  // infinite-product tail threshold
    Real series_tol;   // series tail threshold
    long max_terms = 200000;

    static QContext make(const Complex& q, unsigned precision_bits = 256);

    /// Same tolerances, different base (used for the base-q^2 and base-q^4
    /// product conventions).
    QContext with_base(const Complex& new_q) const;

    Real abs_q() const { return qentry40::abs(q); }
};

struct ProductInfo {
    Real rel_error{0};  // a-posteriori bound on the relative truncation error
    long factors = 0;
};

/// (x; q)_n = prod_{k=0}^{n-1} (1 - x q^k).  n = 0 gives 1.
Complex qpoch_finite(const Complex& x, const QContext& ctx, long n);

/// (x; q)_infinity, truncated once |x q^m| < product_tol and m >= 8.
Complex qpoch_infinite(const Complex& x, const QContext& ctx, ProductInfo* info = nullptr);

/// (x1, x2, ..., xk; q)_infinity = prod of qpoch_infinite; empty list gives 1.
Complex qpoch_multi(std::span<const Complex> xs, const QContext& ctx);
Complex qpoch_multi(std::initializer_list<Complex> xs, const QContext& ctx);

/// prod_{m>=0} (1 - x q^{2m+1}) = (xq; q^2)_infinity, with q = ctx.q.
Complex g_inverse(const Complex& x, const QContext& ctx);

/// q^t for continuous t via exp(t log q), principal branch.
Complex qpow(const QContext& ctx, const Complex& t);
Complex qpow(const QContext& ctx, const Real& t);

/// Does x equal q^k for some integer k in [lo, hi]?  Matching is to relative
/// tolerance 2^-(precision/2), tight enough that random samples never match.
std::optional<long> match_qpower(const Complex& x, const QContext& ctx, long lo, long hi);

/// True if (x; q)_infinity vanishes, i.e. x = q^-j for some integer j >= 0
/// (up to the match_qpower tolerance).
bool qpoch_vanishes(const Complex& x, const QContext& ctx, long max_j = 64);

}  // namespace qentry40
