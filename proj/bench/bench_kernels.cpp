// Serial reference vs OpenMP kernels: hull-volume Monte Carlo and a small sweep.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbfr/harness.hpp"
#include "sbfr/measure.hpp"

using namespace sbfr;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t samples = argc > 1 ? std::stoull(argv[1]) : 200'000;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads %d, samples %llu\n", threads, static_cast<unsigned long long>(samples));

    // Hull of 200 points near a sphere in d=3.
    Rng rng(7);
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) {
        const auto o = random_first_orthant_orientation(3, rng);
        Point p{0.5, 0.5, 0.5};
        for (std::size_t k = 0; k < 3; ++k) p.coords[k] += 0.3 * o[k] * (i % 2 ? 1 : -1) * (i % 3 ? 1 : -1);
        pts.push_back(p);
    }
    VolumeEstimate a, b;
    const double ts = time_ms([&] { a = hull_volume(pts, 3, samples, 11, Execution::Serial); });
    const double tp = time_ms([&] { b = hull_volume(pts, 3, samples, 11, Execution::Parallel); });
    std::printf("hull volume  serial %9.1f ms  parallel %9.1f ms  speedup %.2f  equal %s\n", ts, tp, ts / tp,
                a.volume == b.volume ? "yes" : "no");

    std::vector<ExperimentSetting> cells;
    for (auto st : {Strategy::FSB1, Strategy::FSB2, Strategy::DSB}) {
        ExperimentSetting s;
        s.strategy = st;
        s.repetitions = 8;
        s.gamma = 30;
        cells.push_back(s);
    }
    GlobalConfig g;
    SweepOptions one, many;
    one.jobs = 1;
    many.jobs = threads;
    one.quiet = many.quiet = true;
    SweepResult r1, r2;
    const double s1 = time_ms([&] { r1 = sweep(cells, g, one); });
    const double s2 = time_ms([&] { r2 = sweep(cells, g, many); });
    std::printf("sweep        serial %9.1f ms  parallel %9.1f ms  speedup %.2f  equal %s\n", s1, s2, s1 / s2,
                r1.records.size() == r2.records.size() ? "yes" : "no");
    return 0;
}
