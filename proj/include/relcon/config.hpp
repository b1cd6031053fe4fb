#ifndef RELCON_CONFIG_HPP
#define RELCON_CONFIG_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "relcon/errors.hpp"

namespace relcon {

/// Resource budgets and parallelism for the enumeration-heavy operations.
///
/// The enumerations behind function and constraint searches are doubly
/// exponential; every such operation checks its budget up front and throws
/// budget_error instead of hanging. Results never depend on `jobs`:
/// parallel searches return the lexicographically least witness and
/// canonically ordered sets regardless of scheduling.
struct ExecConfig {
    /// Cap on |A|^n * log2(|B|), the bit size of one function table.
    double max_table_bits = 16.0;
    /// Cap on the number of candidates a single search may enumerate.
    std::uint64_t max_candidates = std::uint64_t{1} << 20;
    /// Worker threads for the inner enumeration loops.
    unsigned jobs = 1;

    void check_table_bits(double bits, const std::string& who) const {
        if (bits > max_table_bits)
            throw budget_error(who + ": table of " + std::to_string(bits) +
                               " bits exceeds budget of " +
                               std::to_string(max_table_bits) +
                               " (raise --max-table-bits)");
    }

    void check_candidates(double count, const std::string& who) const {
        if (count > static_cast<double>(max_candidates))
            throw budget_error(who + ": " + std::to_string(count) +
                               " candidates exceed budget of " +
                               std::to_string(max_candidates) +
                               " (raise --max-candidates)");
    }
};

namespace detail {

/// Runs fn(first, last, chunk_index) over a partition of [0, total) into
/// consecutive chunks, one per worker. Chunk boundaries depend only on
/// `total` and `jobs`, so any per-chunk results can be merged in chunk
/// order to give a schedule-independent answer.
template <typename Fn>
void for_each_chunk(std::uint64_t total, unsigned jobs, Fn&& fn) {
    if (total == 0) return;
    if (jobs <= 1) {
        fn(std::uint64_t{0}, total, unsigned{0});
        return;
    }
    unsigned workers = jobs;
    if (static_cast<std::uint64_t>(workers) > total)
        workers = static_cast<unsigned>(total);
    std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t first = w * chunk;
        std::uint64_t last = std::min(total, first + chunk);
        if (first >= last) break;
        threads.emplace_back([&fn, first, last, w] { fn(first, last, w); });
    }
    for (auto& t : threads) t.join();
}

/// Least index in [0, total) satisfying pred, or `total` if none.
/// Sequential when jobs <= 1; otherwise chunked with a shared lower bound
/// so that late chunks are skipped once an earlier hit is known. The
/// returned index is the global minimum either way.
template <typename Pred>
std::uint64_t find_min_index(std::uint64_t total, unsigned jobs, Pred&& pred) {
    if (jobs <= 1 || total < 1024) {
        for (std::uint64_t i = 0; i < total; ++i)
            if (pred(i)) return i;
        return total;
    }
    std::atomic<std::uint64_t> best{total};
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(256, total / (jobs * 64));
    auto worker = [&] {
        for (;;) {
            std::uint64_t first = next.fetch_add(chunk);
            if (first >= total || first >= best.load()) return;
            std::uint64_t last = std::min(total, first + chunk);
            for (std::uint64_t i = first; i < last; ++i) {
                if (i >= best.load()) break;
                if (pred(i)) {
                    std::uint64_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {}
                    break;
                }
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return best.load();
}

inline double table_bits(std::uint64_t positions, int codomain_size) {
    return static_cast<double>(positions) * std::log2(static_cast<double>(codomain_size));
}

/// |base|^exp as a double (overflow-safe for budget checks).
inline double pow_d(int base, std::uint64_t exp) {
    return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace detail
} // namespace relcon

#endif
