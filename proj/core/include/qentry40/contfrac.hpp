#pragma once

#include "qentry40/recurrence.hpp"

#include <functional>

namespace qentry40 {

/// Sign pattern of the levels after the leading term:
///   Minus   leading/(den0 - num1/(den1 - num2/(...)))
///   Plus    leading/(den0 + num1/(den1 + num2/(...)))
enum class CfSign { Minus, Plus };

/// value = leading / (den(0) sign num(1)/(den(1) sign ...)).  num is indexed
/// from 1, den from 0; coefficients are stored unsigned and the pattern is
/// recorded explicitly so displays can be audited level by level.
struct CFSpec {
    Complex leading;
    std::function<Complex(long)> num;
    std::function<Complex(long)> den;
    CfSign sign = CfSign::Minus;
    std::optional<long> depth;  // exact level count when known to terminate
};

struct CfResult {
    Complex value;
    long depth = 0;
    Real delta{0};  // relative gap between the last two convergents
    bool converged = false;
};

/// Forward convergent recurrence with periodic rescaling.  Stops at
/// spec.depth, at a vanishing partial numerator, or once the gap between
/// consecutive convergents stays below the threshold (default scales with
/// the working precision, ~10^-35 at 256 bits).
CfResult eval_cf(const CFSpec& spec, const QContext& ctx,
                 std::optional<Real> threshold = std::nullopt, long max_depth = 200);

/// 1/a_0 - b_1/a_1 - b_2/a_2 - ... from the recurrence coefficients, with
/// index limits resolved automatically at s = q, q^2.
CFSpec recurrence_cf(const RecurrenceInstance& inst);

/// Same continued fraction but with a_0 and b_1 taken as s -> q^m limits
/// instead of index limits (at s = q this doubles b_1; at s = q^2 it shifts
/// a_0 by a closed additive term).  Matches the ordinary-case closed form
/// when it is continued down to m = 1, 2.
CFSpec recurrence_cf_slimit(const RecurrenceInstance& inst);

/// Pincherle value lim_{n->0} X^(3)_n / (b_n X^(3)_{n-1}); requires the
/// annulus |s/q| < |a| < |s/q^2|.
Complex theorem4_rhs(const RecurrenceInstance& inst);

/// Five-parameter families of the exceptional cases.
struct EntryParams {
    Complex alpha, beta, gamma, delta, epsilon;
    std::array<Complex, 5> all() const { return {alpha, beta, gamma, delta, epsilon}; }
};

// ---- s = q^2 (Watson's case) ----

Complex corollary7_a(const EntryParams& p, const QContext& ctx);  // (q abgde)^(1/2)
VwpParams corollary7_vwp(const EntryParams& p, const QContext& ctx);
Complex corollary7_V(const EntryParams& p, const QContext& ctx);
Complex corollary7_rhs(const EntryParams& p, const QContext& ctx);
CFSpec corollary7_cf(const EntryParams& p, const QContext& ctx);

struct WatsonProducts {
    Complex P, Q;
    Real condition{0};  // (|P|+|Q|)/|P+Q|, the digits lost to cancellation
};

/// Watson's infinite products: P over the even sign combinations, Q over the
/// odd ones, each a product of eight G factors at base q^2 (ctx.q is the
/// square root of the base).  Computed at twice the working precision.
WatsonProducts watson_products(const EntryParams& p, const QContext& ctx);

/// The terminating continued fraction of Watson's theorem (plus pattern);
/// terminates at depth n when a parameter is q^n or q^-n.
CFSpec watson_cf(const EntryParams& p, long n_terminate, const QContext& ctx);

struct PairResult {
    Complex lhs, rhs;
    Real condition{0};
};

/// lhs = (P-Q)/(P+Q), rhs = the terminating continued fraction.
PairResult watson_theoremA(const EntryParams& p, long n_terminate, const QContext& ctx);

/// Terminating closed form of the s = q^2 case: the product-ratio value the
/// right side collapses to when one parameter is an integer power of q,
/// stated at the squared-parameter / base-q^2 level.
WatsonProducts corollary7_products(const EntryParams& p, const QContext& ctx);
Complex corollary7_terminating_rhs(const EntryParams& p, const QContext& ctx);

// ---- s = q (companion case) ----

Complex corollary8_a(const EntryParams& p, const QContext& ctx);  // (abgde/q)^(1/4)
VwpParams corollary8_vwp(const EntryParams& p, const QContext& ctx);
Complex corollary8_wratio(const EntryParams& p, const QContext& ctx);  // Wt1/Wt2
Complex corollary8_rhs(const EntryParams& p, const QContext& ctx);
CFSpec corollary8_cf(const EntryParams& p, const QContext& ctx);

struct CompanionProducts {
    Complex Pp, Qp;
    Real condition{0};
};

/// Base-q^4 products of the terminating companion form (ctx.q is the fourth
/// root of the base); elevated precision as for Watson.
CompanionProducts corollary8_products(const EntryParams& p, const QContext& ctx);

/// 2 (a_0 - (q^2/alpha^2) P'/Q')^-1, the terminating closed form.
Complex corollary8_terminating_rhs(const EntryParams& p, const QContext& ctx);

/// The companion display -(q^2/alpha^2) Q'/P', equal to the continued
/// fraction with doubled first partial numerator.
Complex corollary8_companion_value(const EntryParams& p, const QContext& ctx);

// ---- Remark 2 (s = q) ----

/// X^(2)_{n+1} X^(1)_0 / (2 X^(1)_{n+1} X^(2)_1): the depth-(n+1) approximant
/// of 1/a_0 - 2b_1/a_1 - ... in closed form.
Complex remark2_approximant(const RecurrenceInstance& inst, long n);

/// q (aq)_inf (a/q)_inf / (a^2 (1/a)_inf (1/a)_inf) * Wt2/Wt1, the value the
/// approximants converge to.
Complex remark2_rhs(const RecurrenceInstance& inst);

// ---- s = q^m, ordinary cases ----

/// Closed form of the ordinary case, with the exponent m continuous so the
/// s -> q and s -> q^2 limits can be taken by extrapolation.
Complex corollary9_rhs_m(const VwpParams& p, const Complex& m, const QContext& ctx);
Complex corollary9_rhs(const VwpParams& p, long m, const QContext& ctx);

/// The product-ratio forms the closed form reduces to at s = q and s = q^2.
Complex corollary9_s_to_q(const VwpParams& p, const QContext& ctx);
Complex corollary9_s_to_q2(const VwpParams& p, const QContext& ctx);

// ---- Remark 3 (s -> 0 limit) ----

struct Remark3Params {
    Complex a, b, c, d, e;
    std::array<Complex, 4> lower() const { return {b, c, d, e}; }
};

CFSpec remark3_cf(const Remark3Params& p, const QContext& ctx);
Complex remark3_R(const Remark3Params& p, const QContext& ctx);
Complex remark3_rhs(const Remark3Params& p, const QContext& ctx);

}  // namespace qentry40
