// The OpenMP kernels must produce the same bits as the serial reference for
// any thread count.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "stylevo/kernels.hpp"
#include "stylevo/rng.hpp"

using namespace stylevo;

namespace {

std::vector<double> random_plane(Rng& rng, int w, int h) {
    std::vector<double> p(static_cast<std::size_t>(w) * h);
    for (double& v : p) v = rng.real01();
    return p;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("gaussian taps are normalized and truncated at 3 sigma") {
    const auto taps = kernels::gaussian_taps(2.0);
    CHECK(taps.size() == 13);
    double sum = 0.0;
    for (double t : taps) sum += t;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(taps[6] > taps[0]);
}

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    Rng rng(991);
    for (const auto [w, h] : {std::pair{64, 64}, std::pair{33, 17}, std::pair{1, 9}}) {
        const auto x = random_plane(rng, w, h);
        const auto y = random_plane(rng, w, h);

        std::vector<double> out_s(x.size());
        std::vector<double> out_p(x.size());
        kernels::serial::gaussian_blur(x.data(), out_s.data(), w, h, 2.0);
        kernels::gaussian_blur(x.data(), out_p.data(), w, h, 2.0);
        CHECK(same_bits(out_s, out_p));

        kernels::serial::gradient_magnitude(x.data(), out_s.data(), w, h);
        kernels::gradient_magnitude(x.data(), out_p.data(), w, h);
        CHECK(same_bits(out_s, out_p));

        const auto ms = kernels::serial::moments(x.data(), w, h);
        const auto mp = kernels::moments(x.data(), w, h);
        CHECK(ms.mean == mp.mean);
        CHECK(ms.var == mp.var);

        const auto my = kernels::serial::moments(y.data(), w, h);
        CHECK(kernels::serial::covariance(x.data(), y.data(), w, h, ms.mean, my.mean) ==
              kernels::covariance(x.data(), y.data(), w, h, ms.mean, my.mean));

        CHECK(kernels::serial::hist_range(x.data(), w, h, 16) ==
              kernels::hist_range(x.data(), w, h, 16));
        CHECK(kernels::serial::hist_quant(x.data(), w, h) == kernels::hist_quant(x.data(), w, h));
    }
}

TEST_CASE("rbf_mean matches serial reference bit for bit") {
    Rng rng(1205);
    const std::size_t na = 37, nb = 29, dim = 48;
    std::vector<double> a(na * dim);
    std::vector<double> b(nb * dim);
    for (double& v : a) v = rng.real01();
    for (double& v : b) v = rng.real01();
    CHECK(kernels::serial::rbf_mean(a.data(), na, b.data(), nb, dim, 0.7) ==
          kernels::rbf_mean(a.data(), na, b.data(), nb, dim, 0.7));
}

TEST_CASE("moments computes population statistics") {
    const std::vector<double> v{0.2, 0.4};
    const auto m = kernels::moments(v.data(), 2, 1);
    CHECK(m.mean == doctest::Approx(0.3));
    CHECK(m.var == doctest::Approx(0.01)); // population variance
}

TEST_CASE("blur of a constant plane is that constant") {
    std::vector<double> p(20 * 10, 0.37);
    std::vector<double> out(p.size());
    kernels::gaussian_blur(p.data(), out.data(), 20, 10, 2.0);
    for (double v : out) CHECK(v == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("pairwise distances cover all unordered pairs in order") {
    // Points 0,3,7 on a line: distances (3,7,4).
    const std::vector<double> pts{0.0, 3.0, 7.0};
    const auto d = kernels::pairwise_distances(pts.data(), 3, 1);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(3.0));
    CHECK(d[1] == doctest::Approx(7.0));
    CHECK(d[2] == doctest::Approx(4.0));
}

TEST_CASE("masked moments select only the class pixels") {
    const std::vector<double> p{0.1, 0.5, 0.9, 0.5};
    const std::vector<std::uint8_t> mask{1, 2, 1, 2};
    const auto m = kernels::masked_moments(p.data(), mask.data(), 2, 2, 1);
    CHECK(m.count == 2);
    CHECK(m.mean == doctest::Approx(0.5));
    CHECK(m.var == doctest::Approx(0.16));
    const auto none = kernels::masked_moments(p.data(), mask.data(), 2, 2, 9);
    CHECK(none.count == 0);
}
