// Throughput comparison between the serial reference sweep path and the
// OpenMP path, on a fixed experiment. Verifies both produce identical stats
// before reporting the speedup.

#include <chrono>
#include <cstdio>
#include <sstream>

#include "radiosim/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace radiosim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 200;
  if (argc > 1) trials = std::atoi(argv[1]);

  std::ostringstream cfg;
  cfg << "protocol = expected\n"
         "family = random-undirected\n"
         "n = 32,64\n"
         "p = 0.1\n"
         "trials = "
      << trials
      << "\n"
         "seed = 20240817\n"
         "alpha = 4\n";
  std::istringstream in(cfg.str());
  ExperimentSpec spec = ExperimentSpec::parse(in);

  auto t0 = std::chrono::steady_clock::now();
  SweepResult serial = run_sweep(spec, 1);
  const double serial_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  SweepResult parallel = run_sweep(spec, 0);
  const double parallel_s = seconds_since(t0);

  const bool identical = serial.stats_csv(spec) == parallel.stats_csv(spec) &&
                         serial.runs_jsonl(spec) == parallel.runs_jsonl(spec);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  const auto runs = static_cast<double>(serial.runs.size());
  std::printf("runs              : %d\n", static_cast<int>(runs));
  std::printf("serial            : %8.3f s  (%8.1f runs/s)\n", serial_s, runs / serial_s);
  std::printf("openmp (%d thread): %8.3f s  (%8.1f runs/s)\n", threads, parallel_s,
              runs / parallel_s);
  std::printf("speedup           : %8.2fx\n", serial_s / parallel_s);
  std::printf("outputs identical : %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
