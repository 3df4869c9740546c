#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lzk {

using Pos = std::int32_t;  // 1-based text position
using Len = std::int32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SentinelCollision : Error {
    SentinelCollision() : Error("input contains the reserved sentinel symbol 0") {}
};
struct BadPosition : Error {
    explicit BadPosition(Pos p) : Error("position out of range: " + std::to_string(p)) {}
};
struct BadRange : Error {
    BadRange(Pos lo, Pos hi) : Error("bad range [" + std::to_string(lo) + ".." + std::to_string(hi) + "]") {}
};
struct BadRank : Error {
    explicit BadRank(Len k) : Error("rank out of range: " + std::to_string(k)) {}
};
struct BadDepth : Error {
    explicit BadDepth(Len d) : Error("string depth out of range: " + std::to_string(d)) {}
};
struct NoFactorization : Error {
    explicit NoFactorization(Pos p) : Error("no factorization: stuck at position " + std::to_string(p)), pos(p) {}
    Pos pos;
};
struct CorruptStream : Error {
    using Error::Error;
};
struct InconsistentAutomaton : Error {
    using Error::Error;
};
struct UnsupportedAlgo : Error {
    using Error::Error;
};

/// Input text over symbols [1..255]; the sentinel 0 is conceptually appended.
class Text {
public:
    Text() = default;
    explicit Text(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
        if (bytes_.empty()) throw Error("empty text");
        for (auto b : bytes_)
            if (b == 0) throw SentinelCollision();
    }
    explicit Text(std::string_view s) : Text(std::vector<std::uint8_t>(s.begin(), s.end())) {}

    Pos size() const { return static_cast<Pos>(bytes_.size()); }
    /// 1-based access; position size()+1 yields the sentinel 0.
    std::uint8_t operator[](Pos p) const { return p == size() + 1 ? 0 : bytes_[static_cast<size_t>(p) - 1]; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::string str() const { return std::string(bytes_.begin(), bytes_.end()); }
    Text slice(Pos b, Pos e) const {
        return Text(std::vector<std::uint8_t>(bytes_.begin() + (b - 1), bytes_.begin() + e));
    }

private:
    std::vector<std::uint8_t> bytes_;
};

/// Closed interval of 1-based positions.
struct Interval {
    Pos begin = 1;
    Pos end = 1;
    Len size() const { return end - begin + 1; }
    bool contains(Pos p) const { return begin <= p && p <= end; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval checked_interval(Pos b, Pos e, Pos n) {
    if (b < 1 || e > n || b > e) throw BadRange(b, e);
    return Interval{b, e};
}

enum class Algo : std::uint8_t {
    LZ78 = 1,
    FP78 = 2,
    FPA78 = 3,
    SemiGreedyLZ77 = 4,
    LZD = 5,
    LZMW = 6,
    Lexparse = 7,
    ClosedLongest = 8,
    ClosedShortest = 9,
};

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::LZ78: return "lz78";
        case Algo::FP78: return "fp78";
        case Algo::FPA78: return "fpa78";
        case Algo::SemiGreedyLZ77: return "sg_lz77";
        case Algo::LZD: return "lzd";
        case Algo::LZMW: return "lzmw";
        case Algo::Lexparse: return "lexparse";
        case Algo::ClosedLongest: return "closed_longest";
        case Algo::ClosedShortest: return "closed_shortest";
    }
    return "?";
}

inline bool algo_from_name(std::string_view s, Algo& out) {
    for (auto a : {Algo::LZ78, Algo::FP78, Algo::FPA78, Algo::SemiGreedyLZ77, Algo::LZD, Algo::LZMW,
                   Algo::Lexparse, Algo::ClosedLongest, Algo::ClosedShortest}) {
        if (s == algo_name(a)) {
            out = a;
            return true;
        }
    }
    return false;
}

enum class FactorKind : std::uint8_t { Literal, Ref78, Pair, Copy };

/// One side of an LZD/LZMW pair factor.
struct Component {
    enum class Kind : std::uint8_t { Absent, Literal, Ref } kind = Kind::Absent;
    std::int32_t ref = 0;      // factor/reference id when kind == Ref
    std::uint8_t symbol = 0;   // when kind == Literal
    Len len = 0;               // expanded length (0 for Absent); < full ref length means trimmed
    bool trimmed = false;
    friend bool operator==(const Component&, const Component&) = default;

    static Component literal(std::uint8_t c) { return {Kind::Literal, 0, c, 1, false}; }
    static Component reference(std::int32_t id, Len l, bool trim = false) { return {Kind::Ref, id, 0, l, trim}; }
    static Component absent() { return {}; }
};

struct Factor {
    FactorKind kind = FactorKind::Literal;
    Pos pos = 0;  // start of the factor in the coordinates of the factorized string
    Len len = 0;

    // Literal
    std::uint8_t symbol = 0;

    // Ref78 (lz78/fp78/fpa78): reference id, prefix length taken from the
    // reference, and optional trailing symbol.
    std::int32_t ref = 0;
    Len ref_len = 0;
    bool has_symbol = false;

    // Pair (lzd/lzmw; lzmw uses only the first component)
    Component comp1, comp2;

    // Copy (lexparse/sg_lz77): source position, same coordinates as pos.
    Pos src = 0;

    friend bool operator==(const Factor&, const Factor&) = default;

    static Factor make_literal(Pos p, std::uint8_t c) {
        Factor f;
        f.kind = FactorKind::Literal;
        f.pos = p;
        f.len = 1;
        f.symbol = c;
        return f;
    }
    static Factor make_ref78(Pos p, std::int32_t ref, Len ref_len, bool has_sym, std::uint8_t sym) {
        Factor f;
        f.kind = FactorKind::Ref78;
        f.pos = p;
        f.len = ref_len + (has_sym ? 1 : 0);
        f.ref = ref;
        f.ref_len = ref_len;
        f.has_symbol = has_sym;
        f.symbol = sym;
        return f;
    }
    static Factor make_pair(Pos p, Component c1, Component c2) {
        Factor f;
        f.kind = FactorKind::Pair;
        f.pos = p;
        f.len = c1.len + c2.len;
        f.comp1 = c1;
        f.comp2 = c2;
        return f;
    }
    static Factor make_copy(Pos p, Pos src, Len len) {
        Factor f;
        f.kind = FactorKind::Copy;
        f.pos = p;
        f.len = len;
        f.src = src;
        return f;
    }
};

struct Factorization {
    Algo algo = Algo::LZ78;
    Interval interval{1, 1};
    std::vector<Factor> factors;

    // instrumentation
    std::int64_t marked_ancestor_calls = 0;
    std::int64_t node_visits = 0;
    // fpa78 diagnostic: factors whose used reference prefix is not itself a
    // dictionary reference (the dictionary is not prefix-closed in general)
    std::int64_t ref_prefix_gaps = 0;

    // closed_shortest: position where no factor exists (0 = complete tiling)
    Pos failure_pos = 0;

    bool complete() const { return failure_pos == 0; }
    Len factor_count() const { return static_cast<Len>(factors.size()); }
};

/// Structural equality, ignoring instrumentation and absolute placement:
/// factor starts are compared relative to the factorized interval.
inline bool same_factors(const Factorization& a, const Factorization& b) {
    if (a.factors.size() != b.factors.size() || a.failure_pos - (a.failure_pos ? a.interval.begin - 1 : 0) !=
                                                    b.failure_pos - (b.failure_pos ? b.interval.begin - 1 : 0))
        return false;
    for (size_t i = 0; i < a.factors.size(); ++i) {
        Factor x = a.factors[i], y = b.factors[i];
        x.pos -= a.interval.begin - 1;
        y.pos -= b.interval.begin - 1;
        if (x.kind == FactorKind::Copy) x.src -= a.interval.begin - 1;
        if (y.kind == FactorKind::Copy) y.src -= b.interval.begin - 1;
        if (!(x == y)) return false;
    }
    return true;
}

}  // namespace lzk
