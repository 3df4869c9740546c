#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace lzk {

/// Balanced wavelet tree (matrix layout) over a sequence of nonnegative
/// values, supporting range-successor queries: the smallest value > x among
/// the entries of a subrange.
class WaveletTree {
public:
    WaveletTree() = default;
    explicit WaveletTree(const std::vector<std::int32_t>& seq) {
        n_ = seq.size();
        std::int32_t mx = 1;
        for (auto v : seq) mx = std::max(mx, v);
        height_ = std::bit_width(static_cast<std::uint32_t>(mx));
        max_value_ = (std::int64_t{1} << height_) - 1;
        bits_.assign(height_, {});
        zero_prefix_.assign(height_, {});
        zeros_.assign(height_, 0);
        std::vector<std::int32_t> cur = seq, nxt(n_);
        for (int lvl = 0; lvl < height_; ++lvl) {
            const int shift = height_ - 1 - lvl;
            auto& b = bits_[lvl];
            auto& zp = zero_prefix_[lvl];
            b.assign(n_, 0);
            zp.assign(n_ + 1, 0);
            size_t lo = 0;
            for (size_t i = 0; i < n_; ++i) {
                b[i] = static_cast<std::uint8_t>((cur[i] >> shift) & 1);
                zp[i + 1] = zp[i] + (b[i] ? 0 : 1);
                if (!b[i]) nxt[lo++] = cur[i];
            }
            zeros_[lvl] = lo;
            for (size_t i = 0; i < n_; ++i)
                if (b[i]) nxt[lo++] = cur[i];
            cur.swap(nxt);
        }
    }

    size_t size() const { return n_; }

    /// Smallest value > x within positions [lo..hi) of the original sequence.
    std::optional<std::int32_t> successor(std::int32_t x, size_t lo, size_t hi) const {
        if (lo >= hi) return std::nullopt;
        if (x >= max_value_) return std::nullopt;
        return succ(0, lo, hi, 0, max_value_, x);
    }

private:
    std::optional<std::int32_t> min_in(int lvl, size_t lo, size_t hi, std::int64_t va, std::int64_t vb) const {
        if (lo >= hi) return std::nullopt;
        for (; lvl < height_; ++lvl) {
            const auto& zp = zero_prefix_[lvl];
            size_t zl = zp[lo], zr = zp[hi];
            std::int64_t mid = va + ((vb - va) >> 1);
            if (zr > zl) {
                lo = zl;
                hi = zr;
                vb = mid;
            } else {
                lo = zeros_[lvl] + (lo - zl);
                hi = zeros_[lvl] + (hi - zr);
                va = mid + 1;
            }
        }
        return static_cast<std::int32_t>(va);
    }

    std::optional<std::int32_t> succ(int lvl, size_t lo, size_t hi, std::int64_t va, std::int64_t vb,
                                     std::int32_t x) const {
        if (lo >= hi || vb <= x) return std::nullopt;
        if (va > x) return min_in(lvl, lo, hi, va, vb);
        const auto& zp = zero_prefix_[lvl];
        size_t zl = zp[lo], zr = zp[hi];
        std::int64_t mid = va + ((vb - va) >> 1);
        if (auto r = succ(lvl + 1, zl, zr, va, mid, x)) return r;
        return succ(lvl + 1, zeros_[lvl] + (lo - zl), zeros_[lvl] + (hi - zr), mid + 1, vb, x);
    }

    size_t n_ = 0;
    int height_ = 0;
    std::int64_t max_value_ = 0;
    std::vector<std::vector<std::uint8_t>> bits_;
    std::vector<std::vector<std::int32_t>> zero_prefix_;
    std::vector<size_t> zeros_;
};

}  // namespace lzk
