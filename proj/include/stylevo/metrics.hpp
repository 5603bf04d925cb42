#pragma once

#include <cstddef>
#include <vector>

#include "stylevo/image.hpp"
#include "stylevo/pyramid.hpp"

namespace stylevo {

// The two minimized objectives: distance to the original content and distance
// to the target style, both in [0,1].
struct ObjectivePair {
    double content_distance = 0.0;
    double style_distance = 0.0;

    bool operator==(const ObjectivePair&) const = default;
};

struct StructureTexture {
    double s = 0.0;
    double t = 0.0;
};

inline constexpr double kMetricEps = 1e-6;

// Structure and texture similarity of two equally shaped feature channels:
// S = (2 mx my + eps) / (mx^2 + my^2 + eps),
// T = (2 cov + eps) / (vx + vy + eps), population statistics over all
// positions. The vector overload treats the data as a single row and throws
// std::invalid_argument on size mismatch.
StructureTexture structure_texture_level(const double* x, const double* y, int w, int h,
                                         double eps = kMetricEps);
StructureTexture structure_texture_level(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         double eps = kMetricEps);

// Content-preservation distance over the feature pyramids of both images:
// per level and channel 0.5 (S + T), channel-averaged, uniform level weights,
// returned as 1 - similarity clamped to [0,1]. Zero exactly for identical
// images; symmetric. Throws std::invalid_argument on dimension mismatch or
// levels < 1.
double dists(const Image& x, const Image& y, int levels = kDefaultPyramidLevels);

// Style-proximity proxy in [0,1]; dimensions of the two images may differ.
// Blends per-channel perceptual statistics distance with a coarse-level
// luminance histogram distance, equally weighted. Zero exactly on identical
// images; symmetric.
double style_distance(const Image& x, const Image& style);

// N x D row-major embedding matrix.
struct EmbeddingSet {
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<double> data;

    const double* row(std::size_t i) const { return data.data() + i * dim; }
    void append(const std::vector<double>& v);
};

inline constexpr std::size_t kEmbeddingDim = 48;

// Deterministic image embedding: per-level per-channel (mean, standard
// deviation) over a 4-level pyramid followed by the 16-bin coarsest-level
// luminance histogram; 48 values, all in [0,1].
std::vector<double> embed(const Image& image);

// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^(1/2)) with unbiased (N-1)
// covariances. The cross term uses the symmetric conjugation
// Sa^(1/2) Sb Sa^(1/2) with eigenvalues clamped at 0 and is evaluated in both
// orientations and averaged, making the result exactly symmetric. Requires
// equal dimensions, at least two rows per set, finite input.
double frechet_distance(const EmbeddingSet& a, const EmbeddingSet& b);

// Median pairwise Euclidean distance over the pooled rows of both sets.
double median_pairwise_distance(const EmbeddingSet& a, const EmbeddingSet& b);

// Biased (V-statistic) squared MMD with a Gaussian RBF kernel
// k(u,v) = exp(-||u-v||^2 / (2 h^2)), clamped at 0. Requires equal dimensions
// and at least one row per set.
double mmd_rbf(const EmbeddingSet& a, const EmbeddingSet& b, double bandwidth);

// Resolves the bandwidth with the median heuristic (falling back to 1 when
// the median is 0) and reports the value used through `resolved` if given.
double mmd_rbf_median(const EmbeddingSet& a, const EmbeddingSet& b,
                      double* resolved = nullptr);

} // namespace stylevo
