#pragma once

// Batch storage simulator. Node (group, slot) holds that coordinate of every
// stored stripe. Events sharing a timestamp are applied together (so
// simultaneous failures are outstanding at once), then repair runs to a
// fixpoint in ascending (group, slot) order:
//
//   * a node that is the only failed one in its group is repaired locally,
//     reading its `locality` group mates;
//   * otherwise global decode is attempted over the surviving nodes under
//     the group-aligned rule, reading every surviving symbol of the solvable
//     groups;
//   * nodes that stay unrepairable are counted once (at their failure) and
//     retried after every later batch.
//
// Repairs are instantaneous and verified against the stored stripes;
// bandwidth is counted per repair in per-stripe symbol units, so
// repairs_local * locality + global reads == symbols_read.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/code_params.hpp"
#include "nflc/codec.hpp"
#include "nflc/errors.hpp"

namespace nflc {

enum class EventKind { fail, restore };

struct SimEvent {
    std::uint64_t time = 0;
    std::uint32_t group = 0;
    std::uint32_t slot = 0;
    EventKind kind = EventKind::fail;
};

struct Scenario {
    std::uint64_t stripes = 1;
    std::uint64_t seed = 0;
    std::vector<SimEvent> events;
};

struct SimLogEntry {
    std::uint64_t time = 0;
    std::uint32_t group = 0;
    std::uint32_t slot = 0;
    std::string event;   // "fail" | "restore" | "retry"
    std::string action;  // "local" | "global" | "unrecoverable" | "restored" | "noop"
    std::uint64_t symbols_read = 0;
};

struct SimReport {
    std::uint64_t repairs_local = 0;
    std::uint64_t repairs_global = 0;
    std::uint64_t symbols_read = 0;
    std::uint64_t unrecoverable = 0;
    std::vector<SimLogEntry> log;
};

namespace detail {

// Uniform value in [0, bound) drawn by rejection on bit-masked words, so the
// sequence depends only on the engine's specified output.
inline BigInt draw_below(std::mt19937_64& rng, const BigInt& bound) {
    const unsigned bits = bit_length(bound - 1);
    if (bits == 0) return 0;
    for (;;) {
        BigInt v = 0;
        for (unsigned got = 0; got < bits; got += 64) v = (v << 64) | rng();
        const unsigned excess = ((bits + 63) / 64) * 64 - bits;
        v >>= excess;
        if (v < bound) return v;
    }
}

}  // namespace detail

inline SimReport run_scenario(const CodeSpec& spec, const Scenario& sc, unsigned threads = 1) {
    if (!spec.good()) throw NotGoodCode("simulation requires a good split code");
    if (sc.stripes == 0) throw InvalidScenario("at least one stripe is required");
    for (std::size_t i = 0; i < sc.events.size(); ++i) {
        const SimEvent& e = sc.events[i];
        if (e.group >= spec.group_count() || e.slot >= spec.group_width())
            throw InvalidScenario("event node out of range");
        if (i > 0 && e.time < sc.events[i - 1].time)
            throw InvalidScenario("events must be time-ordered");
    }

    // stored data: one random message per stripe
    std::mt19937_64 rng(sc.seed);
    std::vector<MessagePoly> messages;
    messages.reserve(sc.stripes);
    for (std::uint64_t s = 0; s < sc.stripes; ++s) {
        MessagePoly msg = MessagePoly::zero(spec);
        for (unsigned i = 0; i < msg.rows(); ++i)
            for (unsigned j = 0; j < msg.cols(); ++j)
                msg.set_digit(i, j, detail::draw_below(rng, spec.radix()));
        messages.push_back(std::move(msg));
    }
    std::vector<Codeword> stripes(sc.stripes, Codeword(spec.group_count(), spec.group_width()));
    {
        threads = std::max(1u, threads);
        const auto worker = [&](unsigned tid) {
            for (std::uint64_t s = tid; s < sc.stripes; s += threads)
                stripes[s] = encode(spec, messages[s]);
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
    }

    const unsigned width = spec.group_width();
    using Node = std::pair<std::uint32_t, std::uint32_t>;
    std::vector<unsigned char> failed(static_cast<std::size_t>(spec.group_count()) * width, 0);
    const auto node_index = [width](Node n) {
        return static_cast<std::size_t>(n.first) * width + n.second;
    };
    const auto failed_in_group = [&](std::uint32_t g) {
        unsigned count = 0;
        for (unsigned j = 0; j < width; ++j) count += failed[static_cast<std::size_t>(g) * width + j];
        return count;
    };

    SimReport report;
    std::uint64_t global_reads = 0;

    // One repair attempt against the live layout; returns "", "local" or
    // "global". Every stripe is actually recovered and checked.
    const auto try_repair = [&](Node n, std::uint64_t& reads) -> std::string {
        reads = 0;
        const auto [g, k] = n;
        if (failed_in_group(g) == 1) {
            for (std::uint64_t s = 0; s < sc.stripes; ++s) {
                Codeword view = stripes[s];
                view.erase(g, k);
                if (local_recover(spec, view, g, k) != stripes[s].symbol(g, k))
                    throw Error(ErrorKind::internal, "local repair produced a wrong symbol");
            }
            reads = spec.locality();
            report.repairs_local += 1;
            report.symbols_read += reads;
            return "local";
        }
        BigInt product = 1;
        std::uint64_t readable = 0;
        for (unsigned gg = 0; gg < spec.group_count(); ++gg) {
            unsigned present = 0;
            for (unsigned j = 0; j < width; ++j)
                present += failed[static_cast<std::size_t>(gg) * width + j] ? 0 : 1;
            if (present >= spec.locality()) {
                product *= spec.primes()[gg].p;
                readable += present;
            }
        }
        if (product <= spec.coeff_modulus()) return "";
        for (std::uint64_t s = 0; s < sc.stripes; ++s) {
            Codeword view = stripes[s];
            for (unsigned gg = 0; gg < spec.group_count(); ++gg)
                for (unsigned j = 0; j < width; ++j)
                    if (failed[static_cast<std::size_t>(gg) * width + j]) view.erase(gg, j);
            if (global_decode(spec, view) != messages[s])
                throw Error(ErrorKind::internal, "global repair decoded a wrong message");
        }
        reads = readable;
        report.repairs_global += 1;
        report.symbols_read += readable;
        global_reads += readable;
        return "global";
    };

    std::vector<Node> pending;  // failed nodes awaiting repair, kept sorted
    std::size_t cursor = 0;
    while (cursor < sc.events.size()) {
        const std::uint64_t now = sc.events[cursor].time;
        std::vector<Node> fresh;  // failed by this batch, in event order
        for (; cursor < sc.events.size() && sc.events[cursor].time == now; ++cursor) {
            const SimEvent& e = sc.events[cursor];
            const Node n{e.group, e.slot};
            if (e.kind == EventKind::fail) {
                if (failed[node_index(n)]) throw InvalidScenario("node failed twice without restore");
                failed[node_index(n)] = 1;
                fresh.push_back(n);
            } else {
                if (!failed[node_index(n)]) {
                    report.log.push_back({now, n.first, n.second, "restore", "noop", 0});
                    continue;
                }
                failed[node_index(n)] = 0;
                pending.erase(std::remove(pending.begin(), pending.end(), n), pending.end());
                fresh.erase(std::remove(fresh.begin(), fresh.end(), n), fresh.end());
                report.log.push_back({now, n.first, n.second, "restore", "restored", 0});
            }
        }

        // repair pass over everything failed, ascending, until a fixpoint
        std::map<Node, std::pair<std::string, std::uint64_t>> outcome;
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<Node> down;
            for (Node n : fresh)
                if (failed[node_index(n)]) down.push_back(n);
            down.insert(down.end(), pending.begin(), pending.end());
            std::sort(down.begin(), down.end());
            for (Node n : down) {
                std::uint64_t reads = 0;
                const std::string action = try_repair(n, reads);
                if (!action.empty()) {
                    failed[node_index(n)] = 0;
                    outcome[n] = {action, reads};
                    pending.erase(std::remove(pending.begin(), pending.end(), n), pending.end());
                    progress = true;
                    break;
                }
            }
        }

        for (Node n : fresh) {
            const auto it = outcome.find(n);
            if (it != outcome.end()) {
                report.log.push_back({now, n.first, n.second, "fail", it->second.first,
                                      it->second.second});
                outcome.erase(it);
            } else {
                report.unrecoverable += 1;
                pending.push_back(n);
                report.log.push_back({now, n.first, n.second, "fail", "unrecoverable", 0});
            }
        }
        std::sort(pending.begin(), pending.end());
        for (const auto& [n, result] : outcome)  // retried older pending nodes
            report.log.push_back({now, n.first, n.second, "retry", result.first, result.second});
    }

    if (report.repairs_local * spec.locality() + global_reads != report.symbols_read)
        throw Error(ErrorKind::internal, "bandwidth accounting out of balance");
    return report;
}

}  // namespace nflc
