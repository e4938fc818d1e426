// Microbenchmarks for the hot paths: infinite products, very-well-poised
// series, and continued-fraction evaluation.

#include "qentry40/contfrac.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qentry40;

QContext bench_ctx(unsigned bits) {
    set_working_precision_bits(bits);
    return QContext::make(Complex(0.3, 0.1), bits);
}

VwpParams bench_params(const QContext& ctx) {
    VwpParams p;
    p.a = Complex(1.1, 0.02);
    p.b = Complex(0.9, 0.05);
    p.c = Complex(1.05, -0.03);
    p.d = Complex(0.95, 0.04);
    p.e = Complex(1.02, 0.01);
    p.f = p.a * p.a * p.a / (p.b * p.c * p.d * p.e);  // s = q^3
    (void)ctx;
    return p;
}

void BM_qpoch_infinite(benchmark::State& state) {
    QContext ctx = bench_ctx(static_cast<unsigned>(state.range(0)));
    Complex x(0.7, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpoch_infinite(x, ctx));
    }
}
BENCHMARK(BM_qpoch_infinite)->Arg(256)->Arg(512)->Arg(1024);

void BM_eval_w(benchmark::State& state) {
    QContext ctx = bench_ctx(static_cast<unsigned>(state.range(0)));
    VwpParams p = bench_params(ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_w(p, ctx));
    }
}
BENCHMARK(BM_eval_w)->Arg(256)->Arg(512);

void BM_eval_cf(benchmark::State& state) {
    QContext ctx = bench_ctx(static_cast<unsigned>(state.range(0)));
    VwpParams p = bench_params(ctx);
    RecurrenceInstance inst{p, ctx, 3};
    CFSpec cf = recurrence_cf(inst);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_cf(cf, ctx));
    }
}
BENCHMARK(BM_eval_cf)->Arg(256)->Arg(512);

void BM_theorem4_rhs(benchmark::State& state) {
    QContext ctx = bench_ctx(256);
    VwpParams p = bench_params(ctx);
    RecurrenceInstance inst{p, ctx, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(theorem4_rhs(inst));
    }
}
BENCHMARK(BM_theorem4_rhs);

}  // namespace

BENCHMARK_MAIN();
