#pragma once

#include "qentry40/qcore.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qentry40 {

/// A generic r_phi_s series: numerator/denominator parameter lists and the
/// argument z.  terminate_after = n means the series is known to stop after
/// the q^-n-type numerator parameter kills term n+1 (sum of n+1 terms).
struct PhiSpec {
    std::vector<Complex> num;
    std::vector<Complex> den;
    Complex z;
    std::optional<long> terminate_after;
};

struct SeriesInfo {
    long terms = 0;
    Real tail_estimate{0};
};

/// Sum a phi series by its term ratio with compensated accumulation.
Complex eval_phi_generic(const PhiSpec& spec, const QContext& ctx, SeriesInfo* info = nullptr);

/// The six free parameters of the very-well-poised family.  s is always
/// derived, never stored.
struct VwpParams {
    Complex a, b, c, d, e, f;

    Complex s(const QContext& ctx) const;              // a^3 q^3 / (bcdef)
    std::array<Complex, 5> lower() const { return {b, c, d, e, f}; }
    VwpParams reflected(const QContext& ctx) const;    // (q/a, q/b, ..., q/f)
};

/// Balanced very-well-poised 10-parameter series instance: the base family
/// plus the two extra parameters g, h.  Terminating when h (or another
/// non-special parameter) is q^-n.
struct Vwp10phi9Instance {
    VwpParams p;
    Complex g, h;
    std::optional<long> n;  // termination order, if known

    bool balanced(const QContext& ctx) const;
};

/// Very-well-poised series engine shared by the 10-parameter and 8-parameter
/// evaluators.  `others` are the non-special numerator parameters; the
/// (a, +-q sqrt(a)) pairs enter through the closed factor
/// (1 - a q^{2k}) / (1 - a).
Complex eval_vwp_series(const Complex& a, std::span<const Complex> others, const Complex& z,
                        const QContext& ctx, std::optional<long> terminate,
                        SeriesInfo* info = nullptr);

/// Terminating balanced very-well-poised 10phi9 of the contiguous-relation
/// family, argument q.
Complex eval_10phi9(const Vwp10phi9Instance& inst, const QContext& ctx);

/// Convenience wrapper: 10phi9 with special parameter a and the seven others.
Complex phi10_9(const Complex& a, const std::array<Complex, 7>& others, const QContext& ctx,
                std::optional<long> terminate = std::nullopt);

/// Very-well-poised 8phi7 with argument a^2 q^2 / (bcdef).
Complex eval_w(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
               const Complex& e, const Complex& f, const QContext& ctx);
Complex eval_w(const VwpParams& p, const QContext& ctx);

/// (aq/b, ..., aq/f)_inf times eval_w.
Complex eval_wtilde(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                    const Complex& e, const Complex& f, const QContext& ctx);
Complex eval_wtilde(const VwpParams& p, const QContext& ctx);

/// eval_wtilde divided by (aq, b, c, d, e, f)_inf.
Complex eval_u(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
               const Complex& e, const Complex& f, const QContext& ctx);
Complex eval_u(const VwpParams& p, const QContext& ctx);

}  // namespace qentry40
