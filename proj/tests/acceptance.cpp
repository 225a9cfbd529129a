// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "monopole/verify.hpp"

int main(int argc, char** argv) {
  using namespace monopole::verify;
  BatteryConfig cfg;
  try {
    cfg.tol_scale = tol_scale_from_env();
    if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 0);
    if (argc > 2) cfg.count = std::atoi(argv[2]);
    int failed = 0;
    for (const auto& r : run_battery(cfg)) {
      std::printf("%s\n", format_result(r).c_str());
      if (!r.pass) ++failed;
    }
    std::printf("%d/10 criteria passed (seed %llu, %d trajectories per monopole)\n", 10 - failed,
                static_cast<unsigned long long>(cfg.seed), cfg.count);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
