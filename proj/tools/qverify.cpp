// qverify: seeded residual-verification harness for the q-Entry-40 library.
//
// Runs the identity suites from the verify module and emits a text or JSON
// report.  Exit status: 0 all checks pass, 1 verification failures, 2 usage
// or I/O errors.

#include "qentry40/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace qentry40;

json complex_json(const Complex& z) {
    return json{{"re", to_string(z.re())}, {"im", to_string(z.im())}};
}

json result_json(const IdentityResult& r) {
    json j;
    j["id"] = r.id;
    j["params"] = r.params;
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["residual"] = to_string(r.residual);
    j["tol"] = to_string(r.tolerance);
    j["pass"] = r.pass;
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

std::string render_text(const SuiteReport& rep, const SampleConfig& cfg) {
    std::ostringstream os;
    os << "suite: " << rep.suite << "  seed: " << cfg.seed << "  precision: "
       << cfg.precision_bits << " bits  trials: " << cfg.trials << "\n";
    for (const IdentityResult& r : rep.results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  residual=" << to_string(r.residual)
           << "  tol=" << to_string(r.tolerance);
        if (!r.note.empty()) {
            os << "  (" << r.note << ")";
        }
        os << "\n";
    }
    os << "summary: " << rep.results.size() << " checks, " << rep.failures << " failures, "
       << rep.rejects << " resamples, max residual " << to_string(rep.max_residual) << "\n";
    return os.str();
}

std::string render_json(const SuiteReport& rep, const SampleConfig& cfg) {
    json j;
    j["meta"] = {{"seed", cfg.seed},
                 {"precision", cfg.precision_bits},
                 {"suite", rep.suite},
                 {"trials", cfg.trials},
                 {"q_samples", rep.results.size()},
                 {"resamples", rep.rejects}};
    j["results"] = json::array();
    for (const IdentityResult& r : rep.results) {
        j["results"].push_back(result_json(r));
    }
    j["summary"] = {{"max_residual", to_string(rep.max_residual)},
                    {"failures", rep.failures}};
    return j.dump(2) + "\n";
}

// Identity families the harness checks, by id prefix (after the suite name).
const std::map<std::string, std::string>& explain_table() {
    static const std::map<std::string, std::string> table = {
        {"lemma1",
         "Contiguous relation for the terminating balanced very-well-poised series:\n"
         "phi(b-,c+) - phi equals an explicit coefficient times the raised series\n"
         "phi+(b-).  Sampled with h = q^-n, g fixed by the balance condition."},
        {"three-term-bc-bd",
         "Three-term relation connecting phi(b-,c+), phi(b-,d+) and phi, obtained by\n"
         "eliminating the raised series between two copies of the lemma1 relation."},
        {"lemma2",
         "Three-term relation among phi+(b-), phi+(h-) and phi for terminating series."},
        {"three-term-gh",
         "Three-term relation in the g, h slots whose renormalization produces the\n"
         "second-order recurrence X_{n+1} - a_n X_n + b_n X_{n-1} = 0."},
        {"reflection-symmetry",
         "Under (a,...,f, g, h) -> (q/a,...,q/f, q^{2-n}/s, q^{n+1}), equivalently\n"
         "s -> q^4/s and n -> -n-1, the coefficient a_n is invariant and b_n maps to\n"
         "b_{n+1}.  Checked at continuous indices."},
        {"shift-U",
         "Bailey-type parameter shift for the normalized series U: when b/a = q^N,\n"
         "U(a; b,...,f) = (s/aq)^N U(b^2/a; b, bc/a, bd/a, be/a, bf/a)."},
        {"product-ratio",
         "When s = q^M and b/a = q^N the ratio Wt1/Wt2 collapses to lambda times a\n"
         "ratio of infinite products, with lambda given by one of two termination\n"
         "branches (upper: aq^3/(bs) = q^-n; lower: bs/(aq) = q^-n)."},
        {"series-limit",
         "The e -> q^-n limit of (e)_inf * 4phi3(a,b,c,d; e,f,g; q,q), evaluated by\n"
         "extrapolation in e = q^-n(1+delta), against the shifted 4phi3 closed form."},
        {"limit-contiguous",
         "Three-term contiguous relation among W(f+), W(f-) and W for the 8phi7\n"
         "series, the s -> 0 limit of the g,h-slot relation."},
        {"recurrence",
         "Direct residual of X_{n+1} - a_n X_n + b_n X_{n-1} for the explicit\n"
         "solutions (terminating, reflected, and minimal combination), n = 1..6."},
        {"asymptotic",
         "The rescaled solutions q^{n^2/2-n} s^{n/2} X_n converge geometrically to\n"
         "the 8phi7 limits W1, W2 inside the annulus |s/q| < |a| < |s/q^2|."},
        {"minimal-ratio",
         "|X3_n / X1_n| decreases to zero, certifying X3 = W2 X1 - W1 X2 as the\n"
         "minimal solution (Pincherle)."},
        {"tail-ratio",
         "b_n/(a_n a_{n-1}) tends to q^3/(1+q)^2 geometrically, the parabola-theorem\n"
         "hypothesis for convergence of the continued fraction."},
        {"pincherle",
         "Continued fraction 1/a_0 - b_1/a_1 - ... against the Pincherle value\n"
         "lim_{n->0} X3_n / (b_n X3_{n-1})."},
        {"watson-case",
         "s = q^2 case (Watson's theorem, non-terminating form): the continued\n"
         "fraction equals 2a(1-q)/(q^{3/2} prod(1-alpha)) * (1-V)/(1+V) with V a\n"
         "product ratio times Wt1/Wt2, alpha = a/b, ..., epsilon = a/f."},
        {"watson-products",
         "Watson's terminating theorem: (P-Q)/(P+Q) equals the terminating plus-\n"
         "pattern continued fraction with coefficients A0, alpha_m, beta_m; P and Q\n"
         "are eight-factor products over even/odd sign combinations at base q^2."},
        {"companion-case",
         "s = q case (companion of Ramanujan's Entry 40): the continued fraction\n"
         "equals 2/(a_0 + Z) with Z = (a^2/q)(1/a)_inf^2 / ((aq)_inf (a/q)_inf) *\n"
         "Wt1/Wt2 and a = (alpha beta gamma delta epsilon / q)^{1/4}."},
        {"companion-terminating",
         "Terminating s = q case: with one parameter an odd power of q, parameters\n"
         "raised to the fourth power and base q^4, the fraction collapses to\n"
         "2/(a_0 - (q^2/alpha^2) P'/Q') built from eight-factor products."},
        {"companion-products",
         "Rearranged terminating form: -(q^2/alpha^2) Q'/P' equals the fraction\n"
         "with doubled first partial numerator."},
        {"approximant-closed-form",
         "At s = q the depth-(n+1) approximant of 1/a_0 - 2b_1/a_1 - ... equals\n"
         "X2_{n+1} X1_0 / (2 X1_{n+1} X2_1) exactly."},
        {"ordinary-closed-form",
         "s = q^m, m >= 3: the continued fraction equals the explicit closed form\n"
         "(prefactor times [terminating series minus a Wt2/Wt1 product term])."},
        {"ordinary-limit",
         "The closed form's formal substitutions m -> 1 and m -> 2 reproduce the\n"
         "product-ratio values of the two exceptional cases."},
        {"coefficient-limits",
         "At s = q^m, m = 1, 2 the s-limit and index-limit conventions for a_0 and\n"
         "b_1 are related by: equal a_0 and doubled b_1 at m = 1; a_0 shifted by\n"
         "a q^{1/2} prod(1 - x/a)/(2(1-q)) and equal b_1 at m = 2."},
        {"vanishing-s-cf",
         "s -> 0 limit: continued fraction 1/c_0 - d_1/c_1 - ... equals\n"
         "(1-a/q)/(q prod(1-a/x)) [W(q/a; q/b,...,q/e,q) - R], R a 3phi2 block."},
        {"vanishing-s-consistency",
         "The s = q^12 fraction, rescaled by -q^{(1-m)/2}, agrees with the s -> 0\n"
         "closed form to O(q^12)."},
    };
    return table;
}

int do_explain(const std::string& id) {
    // Longest matching prefix of the family key inside the id.
    std::string best;
    for (const auto& [key, text] : explain_table()) {
        if (id.find(key) != std::string::npos && key.size() > best.size()) {
            best = key;
        }
    }
    if (best.empty()) {
        std::cerr << "no explanation for identity id '" << id << "'\n";
        std::cerr << "known families:\n";
        for (const auto& [key, text] : explain_table()) {
            std::cerr << "  " << key << "\n";
        }
        return 2;
    }
    std::cout << best << ":\n" << explain_table().at(best) << "\n";
    return 0;
}

// Negative control: evaluate one Pincherle route with a deliberately corrupted
// leading coefficient and append the (failing) record.
void inject_error(SuiteReport& rep, const SampleConfig& cfg) {
    PrecisionScope scope(cfg.precision_bits);
    Sampler s(cfg.seed + 99);
    RecurrenceInstance inst = sample_instance(s, cfg, 3, 0.2, 0.3);
    CFSpec cf = recurrence_cf(inst);
    auto den0 = cf.den;
    cf.den = [den0](long n) {
        return n == 0 ? den0(0) * Complex(Real(1) + Real(1e-6)) : den0(n);
    };
    Complex lhs = eval_cf(cf, inst.ctx).value;
    Complex rhs = theorem4_rhs(inst);
    IdentityResult r;
    r.id = "negative-control/corrupted-coefficient";
    r.params = "a0 scaled by 1 + 1e-6";
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = residual_of(lhs, rhs, cfg.precision_bits);
    r.tolerance = scaled_tol(25, cfg.precision_bits);
    r.pass = r.residual <= r.tolerance;
    rep.results.push_back(r);
    if (!r.pass) {
        ++rep.failures;
    }
    if (r.residual > rep.max_residual) {
        rep.max_residual = r.residual;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residual verification for the Entry-40 continued fraction library"};

    SampleConfig cfg;
    if (const char* env = std::getenv("QENTRY40_PRECISION")) {
        cfg.precision_bits = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    std::string suite = "all";
    std::string format = "text";
    std::string output;
    std::string explain_id;
    bool inject = false;

    app.add_option("--suite", suite, "Identity suite")
        ->check(CLI::IsMember(suite_names()));
    app.add_option("--seed", cfg.seed, "Sampling seed");
    app.add_option("--trials", cfg.trials, "Trials per suite")->check(CLI::PositiveNumber);
    app.add_option("--precision", cfg.precision_bits, "Working precision in bits");
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", output, "Write the report to a file instead of stdout");
    app.add_option("--explain", explain_id,
                   "Print what a given identity id (or family prefix) checks, then exit");
    app.add_flag("--inject-error", inject, "Append a deliberately corrupted check")
        ->group("");  // hidden: negative control for the harness itself

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!explain_id.empty()) {
        return do_explain(explain_id);
    }
    if (cfg.precision_bits < 64) {
        std::cerr << "error: --precision must be at least 64 bits\n";
        return 2;
    }

    try {
        SuiteReport rep = run_suite(cfg, suite);
        if (inject) {
            inject_error(rep, cfg);
        }
        std::string text =
            format == "json" ? render_json(rep, cfg) : render_text(rep, cfg);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output);
            if (!out) {
                std::cerr << "error: cannot open output file " << output << "\n";
                return 2;
            }
            out << text;
            if (!out) {
                std::cerr << "error: failed writing " << output << "\n";
                return 2;
            }
        }
        return rep.failures == 0 ? 0 : 1;
    } catch (const qentry40::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == qentry40::Error::Kind::BadInput ? 2 : 1;
    }
}
