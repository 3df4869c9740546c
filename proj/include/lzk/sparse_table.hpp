#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace lzk {

/// Idempotent range queries over a fixed array in O(1) after O(n log n) setup.
/// Returns the index of the extremal element; Less and the tie side pick which.
template <typename T, bool Max = false, bool RightmostTie = false>
class SparseTable {
public:
    SparseTable() = default;
    explicit SparseTable(std::vector<T> values) : vals_(std::move(values)) {
        const size_t n = vals_.size();
        if (n == 0) return;
        const int levels = std::bit_width(n);
        idx_.resize(levels);
        idx_[0].resize(n);
        for (size_t i = 0; i < n; ++i) idx_[0][i] = static_cast<std::int32_t>(i);
        for (int k = 1; k < levels; ++k) {
            const size_t half = size_t{1} << (k - 1);
            idx_[k].resize(n - (size_t{1} << k) + 1);
            for (size_t i = 0; i + (size_t{1} << k) <= n; ++i)
                idx_[k][i] = pick(idx_[k - 1][i], idx_[k - 1][i + half]);
        }
    }

    /// Index of min (or max) of vals[lo..hi], 0-based inclusive; lo <= hi.
    std::int32_t arg(size_t lo, size_t hi) const {
        const int k = std::bit_width(hi - lo + 1) - 1;
        return pick(idx_[k][lo], idx_[k][hi + 1 - (size_t{1} << k)]);
    }
    T value(size_t lo, size_t hi) const { return vals_[static_cast<size_t>(arg(lo, hi))]; }
    const std::vector<T>& values() const { return vals_; }

private:
    std::int32_t pick(std::int32_t a, std::int32_t b) const {
        const T& va = vals_[static_cast<size_t>(a)];
        const T& vb = vals_[static_cast<size_t>(b)];
        bool better;  // does b beat a?
        if constexpr (Max)
            better = RightmostTie ? !(vb < va) : va < vb;
        else
            better = RightmostTie ? !(va < vb) : vb < va;
        return better ? b : a;
    }

    std::vector<T> vals_;
    std::vector<std::vector<std::int32_t>> idx_;
};

}  // namespace lzk
