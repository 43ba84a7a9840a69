#pragma once

#include <atomic>
#include <cstddef>

// Process-wide tunables. All defaults are chosen for desk-scale runs; every
// knob is deterministic: changing worker_threads never changes any result,
// only how output ranges are partitioned.
namespace qmock::config {

namespace detail {
inline std::atomic<int>& worker_threads_slot() {
    static std::atomic<int> v{1};
    return v;
}
inline std::atomic<std::size_t>& karatsuba_threshold_slot() {
    static std::atomic<std::size_t> v{2048};
    return v;
}
inline std::atomic<int>& spt_enumeration_cap_slot() {
    static std::atomic<int> v{80};
    return v;
}
}  // namespace detail

inline int worker_threads() { return detail::worker_threads_slot().load(); }
inline void set_worker_threads(int n) { detail::worker_threads_slot().store(n < 1 ? 1 : n); }

// Dense-length switch point between schoolbook convolution and the
// divide-and-conquer scheme.
inline std::size_t karatsuba_threshold() { return detail::karatsuba_threshold_slot().load(); }
inline void set_karatsuba_threshold(std::size_t n) { detail::karatsuba_threshold_slot().store(n); }

// Largest n the partition-enumeration oracle for spt accepts; beyond this
// only the series path is available.
inline int spt_enumeration_cap() { return detail::spt_enumeration_cap_slot().load(); }
inline void set_spt_enumeration_cap(int n) { detail::spt_enumeration_cap_slot().store(n); }

}  // namespace qmock::config
