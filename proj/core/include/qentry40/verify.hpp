#pragma once

#include "qentry40/contfrac.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qentry40 {

struct SampleConfig {
    std::uint64_t seed = 1;
    long trials = 20;
    unsigned precision_bits = 256;
    double q_lo = 0.1;
    double q_hi = 0.6;
    double box_lo = 0.3;
    double box_hi = 3.0;
    long termination_n = 4;
};

struct IdentityResult {
    std::string id;
    std::string params;
    Complex lhs, rhs;
    Real residual{0};
    Real tolerance{0};
    bool pass = false;
    bool scales_with_precision = true;  // false for method-limited checks
    std::string note;
};

/// Deterministic sampler: all draws go through a fixed-width mt19937_64
/// mapping, so reports are bit-identical across platforms for a given seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double unit();                       // [0, 1)
    double uniform(double lo, double hi);
    long uniform_int(long lo, long hi);  // inclusive

    /// q = r e^{i theta}, r in [lo, hi], theta in [0, pi/4].
    Complex q_sample(double lo, double hi);

    /// modulus in [lo, hi], phase in (-max_phase, max_phase).
    Complex param(double lo, double hi, double max_phase = 0.35);

    void count_reject() { ++rejects_; }
    long rejects() const { return rejects_; }

private:
    std::mt19937_64 rng_;
    long rejects_ = 0;
};

/// |lhs - rhs| / (|lhs| + |rhs| + ulp floor).
Real residual_of(const Complex& lhs, const Complex& rhs, unsigned bits);

/// Tolerance families, pinned at 256 bits and scaled with precision so the
/// precision-doubling property can be asserted.
Real scaled_tol(double digits_at_256, unsigned bits);

// Contiguous-relation checkers (each draws its own sample).
IdentityResult check_lemma1(Sampler& s, const SampleConfig& cfg, long n);
IdentityResult check_eq24(Sampler& s, const SampleConfig& cfg, long n);
IdentityResult check_lemma2(Sampler& s, const SampleConfig& cfg, long n);
IdentityResult check_theorem3(Sampler& s, const SampleConfig& cfg, long n);
IdentityResult check_symmetry(Sampler& s, const SampleConfig& cfg);
IdentityResult check_lemma5(Sampler& s, const SampleConfig& cfg, long N);
IdentityResult check_lemma6(Sampler& s, const SampleConfig& cfg, long M, long N);
IdentityResult check_eq310(Sampler& s, const SampleConfig& cfg, long n);
IdentityResult check_contig_8phi7(Sampler& s, const SampleConfig& cfg);

/// Recurrence-instance sampling helper: annulus point with s = q^m exactly.
RecurrenceInstance sample_instance(Sampler& s, const SampleConfig& cfg, long m,
                                   double q_lo, double q_hi);

IdentityResult check_recurrence_residual(Sampler& s, const SampleConfig& cfg, long m,
                                         int which /* 1,2,3 */);
IdentityResult check_asymptotics(Sampler& s, const SampleConfig& cfg, int which /* 1,2 */);
IdentityResult check_minimality(Sampler& s, const SampleConfig& cfg);
IdentityResult check_tail_ratio(Sampler& s, const SampleConfig& cfg);
IdentityResult check_theorem4_route(Sampler& s, const SampleConfig& cfg, long m);

IdentityResult check_corollary7_cf(Sampler& s, const SampleConfig& cfg);
IdentityResult check_corollary7_route(Sampler& s, const SampleConfig& cfg);
IdentityResult check_corollary7_terminating(Sampler& s, const SampleConfig& cfg, long N);
IdentityResult check_watson(Sampler& s, const SampleConfig& cfg, long n);

IdentityResult check_corollary8_cf(Sampler& s, const SampleConfig& cfg);
IdentityResult check_corollary8_route(Sampler& s, const SampleConfig& cfg);
IdentityResult check_corollary8_terminating(Sampler& s, const SampleConfig& cfg, long N);
IdentityResult check_corollary8_companion(Sampler& s, const SampleConfig& cfg, long N);
IdentityResult check_remark2(Sampler& s, const SampleConfig& cfg, long n);

IdentityResult check_corollary9_route(Sampler& s, const SampleConfig& cfg, long m);
IdentityResult check_corollary9_s_to_q(Sampler& s, const SampleConfig& cfg);
IdentityResult check_corollary9_s_to_q2(Sampler& s, const SampleConfig& cfg);
IdentityResult check_limit_adjustments(Sampler& s, const SampleConfig& cfg, long m);

IdentityResult check_remark3(Sampler& s, const SampleConfig& cfg);
IdentityResult check_remark3_limit(Sampler& s, const SampleConfig& cfg);

struct SuiteReport {
    std::string suite;
    std::vector<IdentityResult> results;
    Real max_residual{0};
    Real max_scaling_residual{0};  // over the precision-scaling subset
    long failures = 0;
    long rejects = 0;
};

/// which: all | lemmas | theorem4 | corollary7 | corollary8 | corollary9 |
/// watson | remark3.  Unknown selector throws BadInput.
SuiteReport run_suite(const SampleConfig& cfg, const std::string& which);

std::vector<std::string> suite_names();

}  // namespace qentry40
