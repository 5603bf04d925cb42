#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace stylevo::kernels {

// Low-level numeric loops shared by the operators, the feature pyramid and the
// metrics. Reductions fix the summation order as row-major accumulation
// (per-row partial sums combined in row order), which makes every result
// bit-identical for any OpenMP thread count. kernels::serial holds the plain
// reference implementations used by the comparison tests and the benchmark.

struct Moments {
    double mean = 0.0;
    double var = 0.0; // population variance
};

// Sampled Gaussian truncated at 3*sigma, normalized to sum 1. Size 6*ceil(sigma)+1.
std::vector<double> gaussian_taps(double sigma);

// Separable Gaussian blur with replicate edges; output clamped to [0,1].
void gaussian_blur(const double* src, double* dst, int w, int h, double sigma);

// 0.5 * |central-difference gradient| of a scalar map, clamped to [0,1].
void gradient_magnitude(const double* src, double* dst, int w, int h);

Moments moments(const double* p, int w, int h);
double covariance(const double* x, const double* y, int w, int h, double mean_x, double mean_y);

// Histogram with bin = min(bins-1, floor(v*bins)) over values in [0,1].
std::vector<std::int64_t> hist_range(const double* p, int w, int h, int bins);
// 256-bin histogram aligned with the 8-bit quantization: bin = round(v*255).
std::vector<std::int64_t> hist_quant(const double* p, int w, int h);

// Mean of exp(-|a_i - b_j|^2 / (2 h^2)) over all (i, j) pairs of two row-major
// point sets with `dim` columns.
double rbf_mean(const double* a, std::size_t na, const double* b, std::size_t nb,
                std::size_t dim, double bandwidth);

// Euclidean distances of all unordered pairs of a pooled point set, in
// row-major pair order ((0,1), (0,2), ..., (1,2), ...).
std::vector<double> pairwise_distances(const double* p, std::size_t n, std::size_t dim);

// Per-class moments over a masked plane; count is the number of selected pixels.
struct MaskedMoments {
    std::size_t count = 0;
    double mean = 0.0;
    double var = 0.0;
};
MaskedMoments masked_moments(const double* p, const std::uint8_t* mask, int w, int h,
                             std::uint8_t cls);

namespace serial {

void gaussian_blur(const double* src, double* dst, int w, int h, double sigma);
void gradient_magnitude(const double* src, double* dst, int w, int h);
Moments moments(const double* p, int w, int h);
double covariance(const double* x, const double* y, int w, int h, double mean_x, double mean_y);
std::vector<std::int64_t> hist_range(const double* p, int w, int h, int bins);
std::vector<std::int64_t> hist_quant(const double* p, int w, int h);
double rbf_mean(const double* a, std::size_t na, const double* b, std::size_t nb,
                std::size_t dim, double bandwidth);

} // namespace serial

} // namespace stylevo::kernels
