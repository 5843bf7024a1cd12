// Serial reference kernels vs their OpenMP versions on n x n grids, plus one
// full hybrid split-step propagation. Set OMP_NUM_THREADS to compare.

#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hybrid/model.hpp"
#include "hybrid/pde.hpp"
#include "hybrid/pde_kernels.hpp"

namespace k = hybrid::kernels;

namespace {

std::vector<k::cplx> field(std::size_t n) {
  std::mt19937 rng(1);
  std::normal_distribution<double> g;
  std::vector<k::cplx> v(n * n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

template <bool Omp>
void BM_apply_phase(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto psi = field(n);
  const std::vector<double> pot(n * n, 0.3);
  for (auto _ : st) {
    if constexpr (Omp) k::omp::apply_phase(psi, pot, 0.01);
    else k::serial::apply_phase(psi, pot, 0.01);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <bool Omp>
void BM_log_curvature(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto psi = field(n);
  const std::vector<double> base(n * n, 0.0);
  std::vector<double> work(n * n), out(n * n);
  for (auto _ : st) {
    if constexpr (Omp) k::omp::log_curvature(base, psi, n, 0.05, 0.25, 1e-12, work, out);
    else k::serial::log_curvature(base, psi, n, 0.05, 0.25, 1e-12, work, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <bool Omp>
void BM_density_sums(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto psi = field(n);
  const k::Axis ax{-8.0, 16.0 / static_cast<double>(n)};
  for (auto _ : st) {
    k::WeightedSums s;
    if constexpr (Omp) s = k::omp::density_sums(psi, n, ax, ax);
    else s = k::serial::density_sums(psi, n, ax, ax);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

void BM_hybrid_propagation(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const hybrid::ModelParams p(2.0, 2.0, 1.0);
  hybrid::GaussianEnsembleState s;
  s.L = hybrid::SymMat2{0.0, 0.0, 0.5};  // K = I
  const auto f0 = hybrid::init_wavefield(s, p, hybrid::GridSpec{10.0, n, 0.05});
  for (auto _ : st) {
    auto f = hybrid::propagate_pde(f0, p, 0.5);  // 10 steps
    benchmark::DoNotOptimize(f.psi.data());
  }
}

}  // namespace

BENCHMARK(BM_apply_phase<false>)->Name("apply_phase/serial")->Arg(256)->Arg(512);
BENCHMARK(BM_apply_phase<true>)->Name("apply_phase/omp")->Arg(256)->Arg(512);
BENCHMARK(BM_log_curvature<false>)->Name("log_curvature/serial")->Arg(256)->Arg(512);
BENCHMARK(BM_log_curvature<true>)->Name("log_curvature/omp")->Arg(256)->Arg(512);
BENCHMARK(BM_density_sums<false>)->Name("density_sums/serial")->Arg(256)->Arg(512);
BENCHMARK(BM_density_sums<true>)->Name("density_sums/omp")->Arg(256)->Arg(512);
BENCHMARK(BM_hybrid_propagation)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
