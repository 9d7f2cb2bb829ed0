// Replays a manifest serially and in parallel and prints wall times.
// Usage: bench_replay [manifest] [repetitions]

#include "autobox/harness.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace autobox;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path manifest = argc > 1 ? argv[1] : AUTOBOX_DATA_DIR "/corpus/manifest.json";
    int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    Workload w = prepare(load_manifest(manifest), {}, {manifest.parent_path(), AUTOBOX_DATA_DIR "/compositions"});

    std::printf("%zu cases, %d threads, best of %d\n", w.cases.size(), omp_get_max_threads(), reps);
    for (const char* h : {"all", "parse_tree", "stack", "line"}) {
        Config cfg;
        cfg.heuristics = parse_heuristics(h);
        double serial = best_of(reps, [&] { run_serial(w, cfg, false); });
        double parallel = best_of(reps, [&] { run_parallel(w, cfg, false); });
        std::printf("%-11s serial %9.2f ms  parallel %9.2f ms  speedup %.2fx\n", h, serial, parallel, serial / parallel);
    }
}
