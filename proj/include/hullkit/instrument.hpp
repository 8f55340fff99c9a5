#pragma once

#include <cstdint>

namespace hullkit {

// Deterministic cost accounting.  Every structure charges its work to these
// counters at well-defined points (one unit per exact predicate, per element
// inspection, per tree-node visit, per record mutation).  The amortized-cost
// tests and the benchmark harness read them; wall-clock time is never used
// as a correctness signal.
struct StepCounters {
    std::uint64_t predicates = 0;   // exact geometric predicate evaluations
    std::uint64_t inspections = 0;  // split-array / splitter element inspections
    std::uint64_t tree_steps = 0;   // balanced-tree node visits
    std::uint64_t record_ops = 0;   // record creations / relinks / flag flips

    std::uint64_t total() const {
        return predicates + inspections + tree_steps + record_ops;
    }
};

inline thread_local StepCounters g_steps;

inline void count_predicate(std::uint64_t n = 1) { g_steps.predicates += n; }
inline void count_inspection(std::uint64_t n = 1) { g_steps.inspections += n; }
inline void count_tree_step(std::uint64_t n = 1) { g_steps.tree_steps += n; }
inline void count_record_op(std::uint64_t n = 1) { g_steps.record_ops += n; }

} // namespace hullkit
