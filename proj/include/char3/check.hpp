#ifndef CHAR3_CHECK_HPP
#define CHAR3_CHECK_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "char3/fp.hpp"

namespace char3 {

constexpr u64 kDefaultSeed = 0x5EED;
constexpr double kExhaustiveBudget = 1e8;  // weighted tuple-operations

struct CheckPolicy {
    enum class Mode { Auto, Exhaustive, Random };
    Mode mode = Mode::Auto;
    u64 seed = kDefaultSeed;
    u64 samples = 1'000'000;

    /// Decide whether a check with `tuples` tuples costing ~`weight` basic
    /// operations each runs exhaustively.
    bool exhaustive(double tuples, double weight) const {
        switch (mode) {
            case Mode::Exhaustive: return true;
            case Mode::Random: return false;
            default: return tuples * weight <= kExhaustiveBudget;
        }
    }
};

struct Counterexample {
    std::vector<u64> tuple;
    std::string note;
};

struct CheckReport {
    std::string name;
    bool passed = true;
    bool exhaustive = true;
    u64 checked = 0;
    std::optional<Counterexample> cex;

    std::string summary() const {
        std::ostringstream os;
        os << name << ": " << (passed ? "pass" : "FAIL") << " (" << (exhaustive ? "exhaustive" : "seeded") << ", "
           << checked << " tuples)";
        if (cex) {
            os << " first counterexample (";
            for (size_t i = 0; i < cex->tuple.size(); ++i) os << (i ? "," : "") << cex->tuple[i];
            os << ")";
            if (!cex->note.empty()) os << " " << cex->note;
        }
        return os.str();
    }
};

inline bool all_passed(const std::vector<CheckReport>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return false;
    return true;
}

inline u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic per-index tuple of values < dims[j], independent of thread
/// count: sample i is a pure function of (seed, i).
struct TupleSampler {
    std::vector<u64> dims;
    u64 seed;

    std::vector<u64> tuple(u64 i) const {
        std::vector<u64> t(dims.size());
        u64 s = splitmix64(seed ^ (i * 0x9E3779B97F4A7C15ULL + 1));
        for (size_t j = 0; j < dims.size(); ++j) {
            s = splitmix64(s);
            t[j] = s % dims[j];
        }
        return t;
    }
};

/// Decode the i-th lexicographic tuple over mixed radix `dims`.
inline std::vector<u64> lex_tuple(u64 i, const std::vector<u64>& dims) {
    std::vector<u64> t(dims.size());
    for (size_t j = dims.size(); j-- > 0;) {
        t[j] = i % dims[j];
        i /= dims[j];
    }
    return t;
}

inline u64 tuple_count(const std::vector<u64>& dims) {
    u64 n = 1;
    for (u64 d : dims) n *= d;
    return n;
}

inline size_t thread_count() {
    if (const char* env = std::getenv("CHAR3_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : std::min<unsigned>(hc, 16);
}

/// Run `fn` for indices [0, n); return the smallest index where it reports a
/// failure (deterministic regardless of thread count). fn must be pure.
inline std::optional<u64> parallel_first_fail(u64 n, const std::function<bool(u64)>& ok) {
    size_t nt = thread_count();
    if (n < 4096 || nt == 1) {
        for (u64 i = 0; i < n; ++i)
            if (!ok(i)) return i;
        return std::nullopt;
    }
    std::atomic<u64> first{n};
    std::vector<std::thread> threads;
    u64 chunk = (n + nt - 1) / nt;
    for (size_t t = 0; t < nt; ++t) {
        u64 lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            for (u64 i = lo; i < hi; ++i) {
                if ((i & 1023) == 0 && first.load(std::memory_order_relaxed) <= lo) return;
                if (!ok(i)) {
                    u64 cur = first.load();
                    while (i < cur && !first.compare_exchange_weak(cur, i)) {
                    }
                    return;
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    u64 f = first.load();
    if (f == n) return std::nullopt;
    return f;
}

/// Generic tuple-identity driver: checks `ok(tuple)` over all lexicographic
/// tuples (exhaustive) or `samples` seeded tuples.
inline CheckReport run_tuple_check(const std::string& name, const std::vector<u64>& dims, double weight,
                                   const CheckPolicy& policy, const std::function<bool(const std::vector<u64>&)>& ok) {
    CheckReport rep;
    rep.name = name;
    u64 total = tuple_count(dims);
    rep.exhaustive = policy.exhaustive(static_cast<double>(total), weight);
    if (rep.exhaustive) {
        rep.checked = total;
        auto fail = parallel_first_fail(total, [&](u64 i) { return ok(lex_tuple(i, dims)); });
        if (fail) {
            rep.passed = false;
            rep.cex = Counterexample{lex_tuple(*fail, dims), ""};
        }
    } else {
        TupleSampler ts{dims, policy.seed};
        rep.checked = policy.samples;
        auto fail = parallel_first_fail(policy.samples, [&](u64 i) { return ok(ts.tuple(i)); });
        if (fail) {
            rep.passed = false;
            rep.cex = Counterexample{ts.tuple(*fail), "(seeded sample " + std::to_string(*fail) + ")"};
        }
    }
    return rep;
}

}  // namespace char3

#endif
