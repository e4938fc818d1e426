#pragma once

#include "qentry40/hyperq.hpp"

namespace qentry40 {

/// One instance of the second-order difference equation
///   X_{n+1} - a_n X_n + b_n X_{n-1} = 0
/// attached to a very-well-poised parameter family.  When s_exponent = m is
/// set, s is taken to be exactly q^m (required by the reflected solution).
struct RecurrenceInstance {
    VwpParams p;
    QContext ctx;
    std::optional<long> s_exponent;

    Complex s() const;

    /// |s/q| < |a| < |s/q^2|, the region where both 8phi7 limits converge.
    bool annulus_ok() const;
};

/// Which resolution to use at an indeterminate coefficient:
///   Auto           probe the formula, take the index limit if singular
///   None           evaluate the formula verbatim (throws on a pole)
///   IndexToInteger limit of the formula as the index tends to the integer
///   SToPower       limit as s tends to q^m with the index held fixed
enum class LimitPath { Auto, None, IndexToInteger, SToPower };

/// Raw coefficient formulas with the index (and s) treated as free values;
/// continuous indices go through q^n = exp(n log q).
Complex coeff_a_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx);
Complex coeff_b_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx);

Complex coeff_a(const RecurrenceInstance& inst, long n, LimitPath path = LimitPath::Auto);
Complex coeff_b(const RecurrenceInstance& inst, long n, LimitPath path = LimitPath::Auto);

/// Explicit solutions, with the exact prefactor q^{-n^2/2+n} / s^{n/2}
/// (principal-branch powers).  The _raw forms take a continuous index and
/// never engage a limit path.
Complex x1_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx,
               std::optional<long> terminate = std::nullopt);
Complex x2_raw(const VwpParams& p, const Complex& s, const Complex& n, const QContext& ctx,
               std::optional<long> terminate = std::nullopt);

Complex x1(const RecurrenceInstance& inst, long n);
Complex x2(const RecurrenceInstance& inst, long n);

/// 8phi7 limits of the rescaled solutions.
Complex w1(const RecurrenceInstance& inst);
Complex w2(const RecurrenceInstance& inst);

/// Minimal solution w2 * x1 - w1 * x2; requires the annulus.
Complex x3(const RecurrenceInstance& inst, long n);

/// Perturbation size for limit paths, balancing extrapolation error against
/// the digits cancelled in the singular factors.
Real default_limit_eps(const QContext& ctx);

/// Two-point linear extrapolation of f(eps) to eps -> 0, using eps and eps/16.
template <typename Fn>
Complex richardson_limit(Fn&& f, const Real& eps) {
    Real eps2 = eps / 16;
    Complex f1 = f(eps);
    Complex f2 = f(eps2);
    return (Complex(16) * f2 - f1) / Complex(15);
}

}  // namespace qentry40
