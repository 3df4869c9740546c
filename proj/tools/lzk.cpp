// lzk command-line front end: factorize files or intervals, decode .lzk
// streams, compare against the brute-force oracles, and print factor-count
// or latency reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <thread>

#include "lzk/ac_automaton.hpp"
#include "lzk/closed.hpp"
#include "lzk/codec.hpp"
#include "lzk/flexible.hpp"
#include "lzk/lexparse.hpp"
#include "lzk/lz78.hpp"
#include "lzk/lzd_lzmw.hpp"
#include "lzk/oracles.hpp"
#include "lzk/text_index.hpp"

using json = nlohmann::json;
using namespace lzk;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitNoFactorization = 4;
constexpr int kExitCorrupt = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw IoError("cannot read " + path);
    return data;
}

void write_output(const std::string& path, const void* data, size_t size) {
    if (path.empty() || path == "-") {
        std::fwrite(data, 1, size, stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw IoError("cannot write " + path);
}

struct Pipeline {
    Text t;
    TextIndex idx;
    SuffixTree st;
    std::optional<ClosedFactorizer> closed;
    explicit Pipeline(Text text) : t(std::move(text)), idx(t), st(idx) {}
    ClosedFactorizer& closed_factorizer() {
        if (!closed) closed.emplace(st);
        return *closed;
    }
};

bool algo_supports_intervals(Algo a) {
    switch (a) {
        case Algo::LZ78:
        case Algo::LZD:
        case Algo::LZMW:
        case Algo::Lexparse:
        case Algo::ClosedLongest:
        case Algo::ClosedShortest: return true;
        default: return false;
    }
}

Factorization run_query(Pipeline& p, QueryHandle& h, Algo a, Interval I) {
    switch (a) {
        case Algo::LZ78: return lz78_factorize(h, I);
        case Algo::LZD: return lzd_factorize(h, I);
        case Algo::LZMW: return lzmw_factorize(h, I);
        case Algo::Lexparse: return lexparse_substring(h, I);
        case Algo::ClosedLongest: return p.closed_factorizer().longest(I);
        case Algo::ClosedShortest: return shortest_closed_substring(p.idx, I);
        case Algo::FP78: return fp78_factorize(h);
        case Algo::FPA78: return fpa78_factorize(h);
        case Algo::SemiGreedyLZ77: return semi_greedy_lz77(p.idx, I.end);
    }
    throw UnsupportedAlgo("run_query");
}

json factor_json(const Factor& f, int ordinal) {
    json j;
    j["i"] = ordinal;
    j["pos"] = f.pos;
    j["len"] = f.len;
    j["ref"] = nullptr;
    j["ref2"] = nullptr;
    j["trim"] = nullptr;
    j["ch"] = nullptr;
    j["src"] = nullptr;
    switch (f.kind) {
        case FactorKind::Literal:
            j["kind"] = "lit";
            j["ch"] = f.symbol;
            break;
        case FactorKind::Ref78:
            if (f.ref == 0 && f.ref_len == 0) {
                j["kind"] = "lit";
                j["ch"] = f.symbol;
            } else {
                j["kind"] = "ref";
                j["ref"] = f.ref;
                j["trim"] = f.ref_len;
                if (f.has_symbol) j["ch"] = f.symbol;
            }
            break;
        case FactorKind::Pair: {
            j["kind"] = "pair";
            j["ref"] = f.comp1.kind == Component::Kind::Ref ? json(f.comp1.ref) : json(0);
            if (f.comp1.kind == Component::Kind::Literal) j["ch"] = f.comp1.symbol;
            if (f.comp2.kind == Component::Kind::Absent)
                j["ref2"] = nullptr;
            else if (f.comp2.kind == Component::Kind::Ref)
                j["ref2"] = f.comp2.ref;
            else {
                j["ref2"] = 0;
                if (j["ch"].is_null()) j["ch"] = f.comp2.symbol;
            }
            if (f.comp1.trimmed || f.comp2.trimmed) j["trim"] = f.comp1.trimmed ? f.comp1.len : f.comp2.len;
            break;
        }
        case FactorKind::Copy:
            j["kind"] = "copy";
            j["src"] = f.src;
            break;
    }
    return j;
}

std::string hex_of(const Text& t) {
    static const char* d = "0123456789abcdef";
    std::string s;
    for (auto b : t.bytes()) {
        s += d[b >> 4];
        s += d[b & 15];
    }
    return s;
}

std::string percent_2dp(std::int64_t num, std::int64_t den) {
    // round half up on the exact rational 10000*num/den
    std::int64_t v = (20000 * num + den) / (2 * den);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld%%", static_cast<long long>(v / 100), static_cast<long long>(v % 100));
    return buf;
}

int worker_count() {
    const char* env = std::getenv("LZK_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v >= 1 ? v : 1;
}

int cmd_factorize(const std::string& input, const std::string& algo_name_s, std::optional<Pos> begin,
                  std::optional<Pos> end, const std::string& format, const std::string& output) {
    Algo algo;
    if (!algo_from_name(algo_name_s, algo)) {
        std::cerr << "unknown algo: " << algo_name_s << "\n";
        return kExitUsage;
    }
    Text t(read_file(input));
    Interval I{1, t.size()};
    if (begin || end) {
        if (algo == Algo::FP78 || algo == Algo::FPA78) {
            std::cerr << algo_name(algo) << " supports full-text factorization only\n";
            return kExitUsage;
        }
        if (algo == Algo::SemiGreedyLZ77 && begin.value_or(1) != 1) {
            std::cerr << "sg_lz77 supports prefixes only (--begin must be 1)\n";
            return kExitUsage;
        }
        I = checked_interval(begin.value_or(1), end.value_or(t.size()), t.size());
        if (!algo_supports_intervals(algo) && algo != Algo::SemiGreedyLZ77) {
            std::cerr << algo_name(algo) << " does not support --begin/--end\n";
            return kExitUsage;
        }
    }
    Pipeline p(t);
    QueryHandle h(p.st);
    Factorization f = run_query(p, h, algo, I);
    if (!f.complete()) {
        std::cerr << "no factorization: stuck at position " << f.failure_pos << "\n";
        return kExitNoFactorization;
    }
    if (format == "binary") {
        auto bytes = codec::encode(f, t);
        write_output(output, bytes.data(), bytes.size());
    } else {
        std::string lines;
        for (size_t i = 0; i < f.factors.size(); ++i) lines += factor_json(f.factors[i], static_cast<int>(i) + 1).dump() + "\n";
        write_output(output, lines.data(), lines.size());
    }
    return 0;
}

int cmd_decode(const std::string& input, const std::string& output) {
    auto bytes = read_file(input);
    Text t = codec::decode(bytes);
    write_output(output, t.bytes().data(), t.bytes().size());
    return 0;
}

int cmd_stats(const std::string& input, const std::string& algos_csv) {
    Text t(read_file(input));
    std::vector<Algo> algos;
    std::string item;
    std::stringstream ss(algos_csv);
    while (std::getline(ss, item, ',')) {
        Algo a;
        if (!algo_from_name(item, a)) {
            std::cerr << "unknown algo: " << item << "\n";
            return kExitUsage;
        }
        algos.push_back(a);
    }
    std::optional<Pipeline> pipe;
    auto need_pipe = [&]() -> Pipeline& {
        if (!pipe) pipe.emplace(t);
        return *pipe;
    };
    std::map<Algo, Len> z;
    for (Algo a : algos) {
        switch (a) {
            case Algo::LZ78: z[a] = lz78_trie_factorize(t).factor_count(); break;
            case Algo::FP78: {
                auto lz = lz78_trie_factorize(t);
                ACAutomaton ac(lz, t);
                z[a] = fp78_factorize_ac(ac, t).factor_count();
                break;
            }
            default: {
                Pipeline& p = need_pipe();
                QueryHandle h(p.st);
                auto f = run_query(p, h, a, {1, t.size()});
                if (!f.complete()) {
                    std::cerr << "no factorization for " << algo_name(a) << " at position " << f.failure_pos << "\n";
                    return kExitNoFactorization;
                }
                z[a] = f.factor_count();
            }
        }
    }
    std::string header = "file\tn", row = input + "\t" + std::to_string(t.size());
    for (Algo a : algos) {
        header += "\tz_" + std::string(algo_name(a));
        row += "\t" + std::to_string(z[a]);
    }
    if (z.count(Algo::LZ78)) {
        for (Algo a : {Algo::FP78, Algo::FPA78}) {
            if (!z.count(a)) continue;
            header += "\tz_" + std::string(algo_name(a)) + "/z_lz78";
            row += "\t" + percent_2dp(z[a], z[Algo::LZ78]);
        }
    }
    std::cout << header << "\n" << row << "\n";
    return 0;
}

int cmd_bench(const std::string& input, const std::string& algo_name_s, int queries, Len min_len,
              std::uint64_t seed, const std::string& backend) {
    Algo algo;
    if (!algo_from_name(algo_name_s, algo)) {
        std::cerr << "unknown algo: " << algo_name_s << "\n";
        return kExitUsage;
    }
    Text t(read_file(input));
    if (min_len < 1 || min_len > t.size()) {
        std::cerr << "--min-len out of range\n";
        return kExitUsage;
    }
    Pipeline p(t);
    QueryHandle h(p.st);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Pos> bd(1, t.size() - min_len + 1);
    std::int64_t total_factors = 0;
    double total_us = 0;
    for (int q = 0; q < queries; ++q) {
        Pos b = bd(rng);
        std::uniform_int_distribution<Pos> ed(b + min_len - 1, t.size());
        Interval I{b, ed(rng)};
        auto t0 = std::chrono::steady_clock::now();
        Factorization f;
        if (algo == Algo::LZ78 && backend == "trie") {
            f = lz78_trie_factorize(t.slice(I.begin, I.end));
        } else if (algo_supports_intervals(algo)) {
            f = run_query(p, h, algo, I);
        } else if (algo == Algo::SemiGreedyLZ77) {
            f = semi_greedy_lz77(p.idx, I.end);
        } else {  // full-text flavors run on the extracted substring
            Pipeline sub(t.slice(I.begin, I.end));
            QueryHandle sh(sub.st);
            f = run_query(sub, sh, algo, {1, sub.t.size()});
        }
        auto t1 = std::chrono::steady_clock::now();
        total_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
        total_factors += f.factor_count();
    }
    std::cout << "file\tn\talgo\tqueries\tfactors\tus_per_factor\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", total_factors ? total_us / static_cast<double>(total_factors) : 0.0);
    std::cout << input << "\t" << t.size() << "\t" << algo_name(algo) << (algo == Algo::LZ78 ? "(" + backend + ")" : "")
              << "\t" << queries << "\t" << total_factors << "\t" << buf << "\n";
    return 0;
}

struct TrialResult {
    bool mismatch = false;
    std::string reproducer;
};

int cmd_verify(const std::string& input, const std::string& algo_name_s, int trials, std::uint64_t seed, Len max_len) {
    Algo algo;
    if (!algo_from_name(algo_name_s, algo)) {
        std::cerr << "unknown algo: " << algo_name_s << "\n";
        return kExitUsage;
    }
    if (trials == 0) return 0;
    Text t(read_file(input));
    Pipeline p(t);
    if (algo == Algo::ClosedLongest) p.closed_factorizer();  // build before fan-out
    const Len cap = std::min<Len>(std::max<Len>(max_len, 1), t.size());
    std::vector<TrialResult> results(static_cast<size_t>(trials));
    std::atomic<int> next{0};
    auto run_trials = [&]() {
        QueryHandle h(p.st);
        for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
            std::uniform_int_distribution<Pos> bd(1, t.size());
            Pos a = bd(rng);
            std::uniform_int_distribution<Pos> ed(a, std::min<Pos>(a + cap - 1, t.size()));
            Interval I{a, ed(rng)};
            Text sub = t.slice(I.begin, I.end);
            Factorization got, expect;
            if (algo == Algo::SemiGreedyLZ77) {
                // prefixes keep full-text previous-factor matches, so the
                // window and its oracle must share one text: a capped prefix
                Text window = t.slice(1, std::min<Pos>(cap, t.size()));
                std::uniform_int_distribution<Pos> md(1, window.size());
                Pos m = md(rng);
                TextIndex widx(window);
                got = semi_greedy_lz77(widx, m);
                expect = oracle::naive_sg_lz77(window, m);
                sub = window.slice(1, m);
                I = {1, m};
            } else if (algo_supports_intervals(algo)) {
                QueryHandle* hh = &h;
                got = run_query(p, *hh, algo, I);
                expect = oracle::naive_factorize(algo, sub);
            } else {
                Pipeline sub_p(sub);
                QueryHandle sh(sub_p.st);
                got = run_query(sub_p, sh, algo, {1, sub.size()});
                expect = oracle::naive_factorize(algo, sub);
            }
            bool ok;
            if (algo == Algo::SemiGreedyLZ77) {
                // copy sources are a free choice; compare shape and validity
                ok = got.factor_count() == expect.factor_count();
                for (size_t k = 0; ok && k < got.factors.size(); ++k) {
                    const auto& g = got.factors[k];
                    const auto& e = expect.factors[k];
                    ok = g.pos == e.pos && g.len == e.len && g.kind == e.kind &&
                         (g.kind != FactorKind::Copy || (g.src < g.pos && oracle::scan_lce(t, g.src, g.pos) >= g.len));
                }
            } else {
                ok = same_factors(got, expect);
            }
            if (!ok) {
                results[static_cast<size_t>(i)].mismatch = true;
                results[static_cast<size_t>(i)].reproducer = std::string(algo_name(algo)) + " interval=[" +
                                                             std::to_string(I.begin) + ".." + std::to_string(I.end) +
                                                             "] text_hex=" + hex_of(sub);
            }
        }
    };
    int workers = std::min(worker_count(), trials);
    if (workers <= 1) {
        run_trials();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_trials);
        for (auto& th : pool) th.join();
    }
    for (const auto& r : results) {
        if (r.mismatch) {
            std::cerr << "MISMATCH " << r.reproducer << "\n";
            return kExitMismatch;
        }
    }
    std::cout << "verified " << trials << " trials for " << algo_name(algo) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lempel-Ziv-family factorizations and substring-compression queries"};
    app.require_subcommand(1);

    std::string input, output, algo = "lz78", format = "jsonl", algos = "lz78,fp78,fpa78", backend = "tree";
    std::optional<Pos> begin_opt, end_opt;
    int trials = 100, queries = 100;
    Len min_len = 1;
    std::uint64_t seed = 1;

    auto* fac = app.add_subcommand("factorize", "factorize a file or an interval of it");
    fac->add_option("--algo", algo, "algorithm")->required();
    fac->add_option("--input", input, "input file")->required();
    fac->add_option("--begin", begin_opt, "interval begin (1-based, inclusive)");
    fac->add_option("--end", end_opt, "interval end (1-based, inclusive)");
    fac->add_option("--format", format, "jsonl|binary")->check(CLI::IsMember({"jsonl", "binary"}));
    fac->add_option("--output", output, "output file (default stdout)");

    auto* dec = app.add_subcommand("decode", "decode a .lzk stream");
    dec->add_option("--input", input, "input .lzk file")->required();
    dec->add_option("--output", output, "output file (default stdout)");

    auto* sta = app.add_subcommand("stats", "factor-count report");
    sta->add_option("--algos", algos, "comma-separated algorithm list");
    sta->add_option("--input", input, "input file")->required();

    auto* ben = app.add_subcommand("bench", "query latency report");
    ben->add_option("--algo", algo, "algorithm")->required();
    ben->add_option("--input", input, "input file")->required();
    ben->add_option("--queries", queries, "number of random intervals");
    ben->add_option("--min-len", min_len, "minimum interval length");
    ben->add_option("--seed", seed, "RNG seed");
    ben->add_option("--backend", backend, "lz78 backend: tree|trie")->check(CLI::IsMember({"tree", "trie"}));

    Len verify_max_len = 512;
    auto* ver = app.add_subcommand("verify", "differential test against the brute-force oracle");
    ver->add_option("--algo", algo, "algorithm")->required();
    ver->add_option("--input", input, "input file")->required();
    ver->add_option("--trials", trials, "number of random intervals");
    ver->add_option("--seed", seed, "RNG seed");
    ver->add_option("--max-len", verify_max_len, "interval length cap (oracles are brute force)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    try {
        if (fac->parsed()) return cmd_factorize(input, algo, begin_opt, end_opt, format, output);
        if (dec->parsed()) return cmd_decode(input, output);
        if (sta->parsed()) return cmd_stats(input, algos);
        if (ben->parsed()) return cmd_bench(input, algo, queries, min_len, seed, backend);
        if (ver->parsed()) return cmd_verify(input, algo, trials, seed, verify_max_len);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CorruptStream& e) {
        std::cerr << "corrupt stream: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const NoFactorization& e) {
        std::cerr << e.what() << "\n";
        return kExitNoFactorization;
    } catch (const BadRange& e) {
        std::cerr << "bad interval: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
