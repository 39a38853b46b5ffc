#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "ddstream/dds_sketch.hpp"
#include "ddstream/exact_oracle.hpp"

namespace ddstream {

struct HeapEntry {
    double estimate = 0.0;
    NodeId node = kNoNode;
    friend bool operator==(const HeapEntry&, const HeapEntry&) = default;
};

/// How the tracker finds a node already in the heap. Both give identical
/// heap states; kLinearScan is a plain O(k) search.
enum class MembershipLookup { kIndexed, kLinearScan };

/// Online top-k seed set over a diffusion-degree sketch.
///
/// A size-k min-heap of (estimate, node). On every edge the head's estimate
/// is recomputed: a member gets its stored value replaced, a newcomer enters
/// while the heap has room, and afterwards only when its estimate is strictly
/// greater than the root's, which is then evicted. Other members keep their
/// stored (possibly stale) estimates.
///
/// Among equal estimates the larger node id sits nearer the root, so it is
/// evicted first.
class TopKTracker {
public:
    explicit TopKTracker(std::size_t k, MembershipLookup lookup = MembershipLookup::kIndexed);

    /// sketch.next(event), then offer(event.head, sketch.query(event.head)).
    void next(AdjSketch& sketch, const EdgeEvent& event);

    /// Heap update for one freshly computed estimate.
    void offer(NodeId node, double estimate);

    /// Snapshot sorted by estimate descending, ties by ascending node id.
    [[nodiscard]] std::vector<RankedNode> query() const;

    [[nodiscard]] std::span<const HeapEntry> heap() const noexcept { return heap_; }
    [[nodiscard]] bool contains(NodeId node) const;
    [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return k_; }
    [[nodiscard]] MembershipLookup lookup() const noexcept { return lookup_; }

    /// True when heap order holds and the index agrees with the heap.
    [[nodiscard]] bool check_invariants() const;

private:
    static bool precedes(const HeapEntry& a, const HeapEntry& b) noexcept {
        return a.estimate != b.estimate ? a.estimate < b.estimate : a.node > b.node;
    }

    [[nodiscard]] std::ptrdiff_t find(NodeId node) const;
    void place(std::size_t pos, HeapEntry entry);
    void sift_up(std::size_t pos);
    void sift_down(std::size_t pos);

    std::size_t k_;
    MembershipLookup lookup_;
    std::vector<HeapEntry> heap_;
    std::unordered_map<NodeId, std::size_t> position_;
};

}  // namespace ddstream
