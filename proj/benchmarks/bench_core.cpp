#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "supint/dynamics.hpp"
#include "supint/integrals.hpp"
#include "supint/jet.hpp"
#include "supint/potentials.hpp"
#include "supint/symmetry.hpp"

namespace {

using namespace supint;
using coords::Chart;
using coords::PhaseState;

void BM_JetInvSinSq(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const Jet x = Jet::variable(0.7, order);
    benchmark::DoNotOptimize(inv_sin_sq(3.0 * x + 0.2));
  }
}
BENCHMARK(BM_JetInvSinSq)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_LadderEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto l = integrals::build_ladder_integral(n, integrals::sin_family_profile(1.5, n, 0.2), 0.2);
  const PhaseState s{Chart::kPolar2, Eigen::Vector2d(1.1, 1.0 / n), Eigen::Vector2d(0.3, -0.4)};
  for (auto _ : state) benchmark::DoNotOptimize(l(s));
}
BENCHMARK(BM_LadderEval)->DenseRange(1, 4);

void BM_PoissonBracket(benchmark::State& state) {
  const auto set = integrals::standard_integrals("calogero");
  const PhaseState s{Chart::kCylindrical3, Eigen::Vector3d(1.2, 0.3, 0.1), Eigen::Vector3d(0.2, 0.5, -0.3)};
  const auto& h1 = set.get("H3");
  for (auto _ : state) benchmark::DoNotOptimize(integrals::poisson_bracket(h1, set.hamiltonian(), s));
}
BENCHMARK(BM_PoissonBracket);

void BM_StepVerlet4Calogero(benchmark::State& state) {
  const auto h = potentials::natural_hamiltonian(potentials::make_potential("calogero"), Chart::kCartesianLine, 3);
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1.1, 0.05, -0.9), Eigen::Vector3d(0.3, -0.1, 0.2)};
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::step(dynamics::Scheme::kVerlet4, s, 1e-3, h));
}
BENCHMARK(BM_StepVerlet4Calogero);

void BM_StepMidpoint4Platonic(benchmark::State& state) {
  const std::string id = "platonic-" + std::to_string(state.range(0));
  const auto h = potentials::natural_hamiltonian(potentials::make_potential(id), Chart::kSphere2, 2);
  const bool icosa = state.range(0) == 3;
  const PhaseState s{Chart::kSphere2,
                     icosa ? Eigen::Vector2d(0.692358139784, 0.6283185307179586) : Eigen::Vector2d(0.975316618125, 0.7853981633974483),
                     Eigen::Vector2d(0.0, 0.05)};
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::step(dynamics::Scheme::kMidpoint4, s, 1e-3, h));
}
BENCHMARK(BM_StepMidpoint4Platonic)->DenseRange(1, 3);

void BM_IcosahedralGroup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(symmetry::platonic_group(symmetry::PlatonicKind::kIcosa).order());
}
BENCHMARK(BM_IcosahedralGroup);

}  // namespace

BENCHMARK_MAIN();
