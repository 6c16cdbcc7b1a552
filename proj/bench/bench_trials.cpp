// Compares the serial reference trial loop against the OpenMP kernel on
// the pair-concentration workload and checks that the results agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "srp/montecarlo.hpp"
#include "srp/parallel.hpp"

using namespace srp;

namespace {

double now() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

ExperimentConfig workload(std::int64_t trials) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::pair_concentration;
  cfg.N = 500;
  cfg.n = 200;
  cfg.d1 = 5;
  cfg.d2 = 10;
  cfg.affinity = std::sqrt(2.0);
  cfg.epsilons = {0.35, 0.5};
  cfg.trials = trials;
  cfg.master_seed = 42;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  const std::int64_t trials = quick ? 300 : 5000;
  const auto cfg = workload(trials);

  const double t0 = now();
  const auto serial = run_pair_concentration(cfg, 1);
  const double serial_time = now() - t0;

#ifdef _OPENMP
  const int workers = omp_get_max_threads();
#else
  const int workers = 1;
#endif
  const double t1 = now();
  const auto parallel = run_pair_concentration(cfg, workers);
  const double parallel_time = now() - t1;

  bool identical = serial.records.size() == parallel.records.size();
  for (std::size_t i = 0; identical && i < serial.records.size(); ++i)
    identical = serial.records[i].measured == parallel.records[i].measured;

  std::printf("trials          : %lld\n", (long long)trials);
  std::printf("serial          : %8.3f s  (%.3f ms/trial)\n", serial_time,
              serial_time / trials * 1e3);
  std::printf("openmp (%2d thr) : %8.3f s  (%.3f ms/trial)\n", workers,
              parallel_time, parallel_time / trials * 1e3);
  std::printf("speedup         : %8.2fx\n", serial_time / parallel_time);
  std::printf("results identical: %s\n", identical ? "yes" : "NO");

  return identical ? 0 : 1;
}
