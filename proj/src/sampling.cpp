#include "schedest/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace schedest {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Box-Muller stream over mt19937_64 output; draws are platform-independent up
// to libm rounding and fully determined by the substream seed.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

  private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ull * (chunk_index + 1));
}

std::int64_t num_sample_chunks(std::int64_t count) {
    return (count + kSampleChunkRows - 1) / kSampleChunkRows;
}

Eigen::MatrixXd sample_chunk(const SourceModel& source, std::int64_t count,
                             std::uint64_t seed, std::int64_t chunk_index) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    const std::int64_t begin = chunk_index * kSampleChunkRows;
    if (chunk_index < 0 || begin >= count)
        throw std::invalid_argument("sample_chunk: chunk index out of range");

    const std::int64_t rows = std::min(kSampleChunkRows, count - begin);
    const int n = source.dim();

    Eigen::MatrixXd z(rows, n);
    NormalStream stream(chunk_seed(seed, static_cast<std::uint64_t>(chunk_index)));
    for (std::int64_t r = 0; r < rows; ++r)
        for (int c = 0; c < n; ++c) z(r, c) = stream.next();

    return z * source.chol_lower().transpose();
}

Eigen::MatrixXd sample(const SourceModel& source, std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    Eigen::MatrixXd out(count, source.dim());
    const std::int64_t chunks = num_sample_chunks(count);
    for (std::int64_t c = 0; c < chunks; ++c) {
        const Eigen::MatrixXd block = sample_chunk(source, count, seed, c);
        out.middleRows(c * kSampleChunkRows, block.rows()) = block;
    }
    return out;
}

void parallel_for_index(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                        int threads) {
    if (n <= 0) return;
    int t = threads;
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t <= 0) t = 1;
    t = static_cast<int>(std::min<std::int64_t>(t, n));

    if (t == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t i = w; i < n; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace schedest
