#include "ddstream/topk_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddstream {

TopKTracker::TopKTracker(std::size_t k, MembershipLookup lookup) : k_(k), lookup_(lookup) {
    if (k_ == 0) throw std::invalid_argument("top-k: k must be >= 1");
    heap_.reserve(k_);
    if (lookup_ == MembershipLookup::kIndexed) position_.reserve(k_);
}

void TopKTracker::next(AdjSketch& sketch, const EdgeEvent& event) {
    sketch.next(event);
    offer(event.head, sketch.query(event.head));
}

void TopKTracker::offer(NodeId node, double estimate) {
    if (auto pos = find(node); pos >= 0) {
        auto p = static_cast<std::size_t>(pos);
        const bool decreased = estimate < heap_[p].estimate;
        heap_[p].estimate = estimate;
        if (decreased) {
            sift_up(p);
        } else {
            sift_down(p);
        }
        return;
    }
    if (heap_.size() < k_) {
        heap_.push_back({});
        place(heap_.size() - 1, {estimate, node});
        sift_up(heap_.size() - 1);
        return;
    }
    if (estimate > heap_.front().estimate) {
        if (lookup_ == MembershipLookup::kIndexed) position_.erase(heap_.front().node);
        place(0, {estimate, node});
        sift_down(0);
    }
}

std::vector<RankedNode> TopKTracker::query() const {
    std::vector<RankedNode> out;
    out.reserve(heap_.size());
    for (const auto& e : heap_) out.push_back({e.node, e.estimate});
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
}

bool TopKTracker::contains(NodeId node) const { return find(node) >= 0; }

std::ptrdiff_t TopKTracker::find(NodeId node) const {
    if (lookup_ == MembershipLookup::kIndexed) {
        auto it = position_.find(node);
        return it == position_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
    }
    for (std::size_t i = 0; i < heap_.size(); ++i) {
        if (heap_[i].node == node) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

void TopKTracker::place(std::size_t pos, HeapEntry entry) {
    heap_[pos] = entry;
    if (lookup_ == MembershipLookup::kIndexed) position_[entry.node] = pos;
}

void TopKTracker::sift_up(std::size_t pos) {
    HeapEntry moving = heap_[pos];
    while (pos > 0) {
        std::size_t parent = (pos - 1) / 2;
        if (!precedes(moving, heap_[parent])) break;
        place(pos, heap_[parent]);
        pos = parent;
    }
    place(pos, moving);
}

void TopKTracker::sift_down(std::size_t pos) {
    HeapEntry moving = heap_[pos];
    const std::size_t n = heap_.size();
    while (true) {
        std::size_t child = 2 * pos + 1;
        if (child >= n) break;
        if (child + 1 < n && precedes(heap_[child + 1], heap_[child])) ++child;
        if (!precedes(heap_[child], moving)) break;
        place(pos, heap_[child]);
        pos = child;
    }
    place(pos, moving);
}

bool TopKTracker::check_invariants() const {
    if (heap_.size() > k_) return false;
    for (std::size_t i = 1; i < heap_.size(); ++i) {
        if (precedes(heap_[i], heap_[(i - 1) / 2])) return false;
    }
    for (std::size_t i = 0; i < heap_.size(); ++i) {
        for (std::size_t j = i + 1; j < heap_.size(); ++j) {
            if (heap_[i].node == heap_[j].node) return false;
        }
    }
    if (lookup_ == MembershipLookup::kIndexed) {
        if (position_.size() != heap_.size()) return false;
        for (const auto& [node, pos] : position_) {
            if (pos >= heap_.size() || heap_[pos].node != node) return false;
        }
    }
    return true;
}

}  // namespace ddstream
