#pragma once

// Exhaustive analyses: exact minimum distance (full pairwise scan, no early
// exit; the bound can be strictly below the true minimum), injectivity, and
// single-erasure locality over the whole message set. All reports are
// deterministic for any thread count: threads partition by leading index and
// results merge through a total order.

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/code_params.hpp"
#include "nflc/codec.hpp"
#include "nflc/errors.hpp"

namespace nflc {

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t(1) << 24;

struct DistanceReport {
    unsigned min_distance = 0;
    unsigned lower_bound = 0;
    BigInt witness_a, witness_b;  // message enumeration indices, witness_a < witness_b
    std::uint64_t enumerated = 0;
};

struct InjectivityReport {
    bool injective = false;
    std::uint64_t distinct = 0;
    std::uint64_t enumerated = 0;
};

namespace detail {

inline std::uint64_t guarded_size(const CodeSpec& spec, bool force) {
    const BigInt size = spec.code_size();
    if (!force && size > kEnumerationLimit)
        throw TooLarge("code too large for exhaustive analysis; pass force to override");
    if (size > (BigInt(1) << 62))
        throw TooLarge("code size exceeds any feasible enumeration");
    return size.convert_to<std::uint64_t>();
}

// All codewords in enumeration order, flattened row-major.
inline std::vector<std::uint64_t> all_codewords(const CodeSpec& spec, std::uint64_t count,
                                                unsigned threads) {
    const unsigned n = spec.length();
    std::vector<std::uint64_t> flat(count * n);
    const auto worker = [&](unsigned tid) {
        for (std::uint64_t v = tid; v < count; v += threads) {
            const Codeword cw = encode_raw(spec, MessagePoly::from_index(spec, BigInt(v)));
            for (unsigned g = 0, k = 0; g < cw.groups(); ++g)
                for (unsigned j = 0; j < cw.width(); ++j, ++k) flat[v * n + k] = cw.symbol(g, j);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    return flat;
}

}  // namespace detail

inline DistanceReport brute_min_distance(const CodeSpec& spec, unsigned threads = 1,
                                         bool force = false) {
    threads = std::max(1u, threads);
    const std::uint64_t count = detail::guarded_size(spec, force);
    const unsigned n = spec.length();
    const std::vector<std::uint64_t> flat = detail::all_codewords(spec, count, threads);

    struct Best {
        unsigned d = ~0u;
        std::uint64_t a = 0, b = 0;
        bool beats(unsigned dist, std::uint64_t i, std::uint64_t j) const {
            if (dist != d) return dist < d;
            if (i != a) return i < a;
            return j < b;
        }
    };
    std::vector<Best> best(threads);
    const auto worker = [&](unsigned tid) {
        Best local;
        for (std::uint64_t i = tid; i + 1 < count; i += threads) {
            const std::uint64_t* wi = flat.data() + i * n;
            for (std::uint64_t j = i + 1; j < count; ++j) {
                const std::uint64_t* wj = flat.data() + j * n;
                unsigned d = 0;
                for (unsigned k = 0; k < n; ++k) d += wi[k] != wj[k];
                if (local.beats(d, i, j)) local = Best{d, i, j};
            }
        }
        best[tid] = local;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    Best overall;
    for (const Best& b : best)
        if (overall.beats(b.d, b.a, b.b)) overall = b;

    DistanceReport report;
    report.min_distance = overall.d;
    report.lower_bound = spec.distance_bound();
    report.witness_a = overall.a;
    report.witness_b = overall.b;
    report.enumerated = count;
    return report;
}

inline InjectivityReport brute_injectivity(const CodeSpec& spec, unsigned threads = 1,
                                           bool force = false) {
    threads = std::max(1u, threads);
    const std::uint64_t count = detail::guarded_size(spec, force);
    const unsigned n = spec.length();
    const std::vector<std::uint64_t> flat = detail::all_codewords(spec, count, threads);

    std::vector<std::uint64_t> order(count);
    for (std::uint64_t i = 0; i < count; ++i) order[i] = i;
    const auto less = [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(flat.data() + a * n, flat.data() + (a + 1) * n,
                                            flat.data() + b * n, flat.data() + (b + 1) * n);
    };
    std::sort(order.begin(), order.end(), less);
    std::uint64_t distinct = count == 0 ? 0 : 1;
    for (std::uint64_t i = 1; i < count; ++i)
        if (less(order[i - 1], order[i])) ++distinct;

    return InjectivityReport{distinct == count, distinct, count};
}

// True iff every single-slot erasure of every codeword is repaired locally
// to the erased symbol.
inline bool locality_exhaustive(const CodeSpec& spec, unsigned threads = 1, bool force = false) {
    threads = std::max(1u, threads);
    const std::uint64_t count = detail::guarded_size(spec, force);
    std::vector<unsigned char> ok(threads, 1);
    const auto worker = [&](unsigned tid) {
        for (std::uint64_t v = tid; v < count && ok[tid]; v += threads) {
            const Codeword cw = detail::encode_raw(spec, MessagePoly::from_index(spec, BigInt(v)));
            for (unsigned g = 0; g < cw.groups() && ok[tid]; ++g) {
                for (unsigned j = 0; j < cw.width(); ++j) {
                    Codeword damaged = cw;
                    damaged.erase(g, j);
                    if (local_recover(spec, damaged, g, j) != cw.symbol(g, j)) {
                        ok[tid] = 0;
                        break;
                    }
                }
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    return std::all_of(ok.begin(), ok.end(), [](unsigned char f) { return f != 0; });
}

}  // namespace nflc
