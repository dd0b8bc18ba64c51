#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "schedest/source_model.hpp"

namespace schedest {

/// Rows per sample chunk. Sampling and every Monte Carlo reduction are
/// organized around this fixed block size so results do not depend on how the
/// chunks are scheduled across threads.
inline constexpr std::int64_t kSampleChunkRows = 1 << 16;

/// splitmix64 of (seed, chunk_index): the substream seed of one chunk.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index);

std::int64_t num_sample_chunks(std::int64_t count);

/// Rows [chunk_index * kSampleChunkRows, ...) of the sample stream for
/// (source, count, seed). Each chunk owns a mt19937_64 substream; standard
/// normals come from Box-Muller on 53-bit uniforms and are correlated through
/// the lower Cholesky factor of the covariance.
Eigen::MatrixXd sample_chunk(const SourceModel& source, std::int64_t count,
                             std::uint64_t seed, std::int64_t chunk_index);

/// count i.i.d. draws from N(0, cov), one per row. Identical (seed, count,
/// cov) inputs yield bit-identical output.
Eigen::MatrixXd sample(const SourceModel& source, std::int64_t count, std::uint64_t seed);

/// Runs fn(i) for i in [0, n) on a fixed-stride thread partition.
/// threads == 0 picks the hardware default.
void parallel_for_index(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                        int threads = 0);

/// Fixed pairwise-tree reduction; the combination order depends only on the
/// number of items, never on thread scheduling.
template <typename T, typename Op>
T reduce_pairwise(std::vector<T> items, Op op) {
    if (items.empty()) return T{};
    while (items.size() > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < items.size(); i += 2)
            items[out++] = op(items[i], items[i + 1]);
        if (items.size() % 2 == 1) items[out++] = items.back();
        items.resize(out);
    }
    return items[0];
}

}  // namespace schedest
