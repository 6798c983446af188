#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace piforge::detail {

// Append-only memo table. Readers of already-published indices never lock;
// growth happens under a mutex and is published with release semantics.
// Element addresses are stable (chunked storage).
template <class T>
class GrowingTable {
public:
    static constexpr std::size_t kChunkBits = 10;
    static constexpr std::size_t kChunk = std::size_t{1} << kChunkBits;
    static constexpr std::size_t kMaxChunks = 4096;

    // gen(n, table) computes entry n; it may read entries < n via table.at().
    template <class Gen>
    const T& at(std::size_t n, Gen&& gen) {
        if (n < size_.load(std::memory_order_acquire)) return slot(n);
        if (n >= kChunk * kMaxChunks) throw std::length_error("GrowingTable capacity exceeded");
        std::lock_guard lock(mu_);
        std::size_t size = size_.load(std::memory_order_relaxed);
        while (size <= n) {
            T value = gen(size, *this);
            const std::size_t c = size >> kChunkBits;
            if (!chunks_[c]) chunks_[c] = std::make_unique<T[]>(kChunk);
            chunks_[c][size & (kChunk - 1)] = std::move(value);
            ++size;
            size_.store(size, std::memory_order_release);
        }
        return slot(n);
    }

    // Only valid for indices already published.
    const T& published(std::size_t n) const { return slot(n); }
    std::size_t size() const { return size_.load(std::memory_order_acquire); }

private:
    const T& slot(std::size_t n) const { return chunks_[n >> kChunkBits][n & (kChunk - 1)]; }

    std::array<std::unique_ptr<T[]>, kMaxChunks> chunks_{};
    std::atomic<std::size_t> size_{0};
    std::mutex mu_;
};

}  // namespace piforge::detail
