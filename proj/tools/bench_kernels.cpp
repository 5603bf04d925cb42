// Times the OpenMP kernels against their serial reference implementations and
// checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stylevo/kernels.hpp"
#include "stylevo/rng.hpp"

using namespace stylevo;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, bool bitwise_equal) {
    std::printf("%-22s %10.3f ms %10.3f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, bitwise_equal ? "bit-equal" : "MISMATCH");
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

int main(int argc, char** argv) {
    int size = 1024;
    int reps = 5;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--size" && i + 1 < argc) size = std::atoi(argv[++i]);
        else if (arg == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);
    }

#ifdef _OPENMP
    std::printf("threads: %d, image %dx%d, %d reps\n", omp_get_max_threads(), size, size, reps);
#else
    std::printf("OpenMP disabled, image %dx%d, %d reps\n", size, size, reps);
#endif
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    Rng rng(12345);
    const std::size_t n = static_cast<std::size_t>(size) * size;
    std::vector<double> plane(n);
    std::vector<double> other(n);
    for (std::size_t i = 0; i < n; ++i) plane[i] = rng.real01();
    for (std::size_t i = 0; i < n; ++i) other[i] = rng.real01();

    std::vector<double> out_s(n);
    std::vector<double> out_p(n);

    report("gaussian_blur s=2",
           time_ms([&] { kernels::serial::gaussian_blur(plane.data(), out_s.data(), size, size, 2.0); }, reps),
           time_ms([&] { kernels::gaussian_blur(plane.data(), out_p.data(), size, size, 2.0); }, reps),
           same_bits(out_s, out_p));

    report("gradient_magnitude",
           time_ms([&] { kernels::serial::gradient_magnitude(plane.data(), out_s.data(), size, size); }, reps),
           time_ms([&] { kernels::gradient_magnitude(plane.data(), out_p.data(), size, size); }, reps),
           same_bits(out_s, out_p));

    kernels::Moments ms{}, mp{};
    report("moments",
           time_ms([&] { ms = kernels::serial::moments(plane.data(), size, size); }, reps),
           time_ms([&] { mp = kernels::moments(plane.data(), size, size); }, reps),
           ms.mean == mp.mean && ms.var == mp.var);

    double cs = 0.0, cp = 0.0;
    report("covariance",
           time_ms([&] { cs = kernels::serial::covariance(plane.data(), other.data(), size, size, ms.mean, ms.mean); }, reps),
           time_ms([&] { cp = kernels::covariance(plane.data(), other.data(), size, size, ms.mean, ms.mean); }, reps),
           cs == cp);

    std::vector<std::int64_t> hs, hp;
    report("hist_range 16",
           time_ms([&] { hs = kernels::serial::hist_range(plane.data(), size, size, 16); }, reps),
           time_ms([&] { hp = kernels::hist_range(plane.data(), size, size, 16); }, reps),
           hs == hp);

    // Pairwise RBF kernel mean over two point sets (MMD workload).
    const std::size_t rows = 512;
    const std::size_t dim = 48;
    std::vector<double> pa(rows * dim);
    std::vector<double> pb(rows * dim);
    for (double& v : pa) v = rng.real01();
    for (double& v : pb) v = rng.real01();
    double rs = 0.0, rp = 0.0;
    report("rbf_mean 512x48",
           time_ms([&] { rs = kernels::serial::rbf_mean(pa.data(), rows, pb.data(), rows, dim, 1.0); }, reps),
           time_ms([&] { rp = kernels::rbf_mean(pa.data(), rows, pb.data(), rows, dim, 1.0); }, reps),
           rs == rp);

    return 0;
}
