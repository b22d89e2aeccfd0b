#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hrlz {

/// Meldable min-heap with constant-time add-to-all, built from standard
/// binary heaps arranged on two levels.
///
/// A top heap holds the minimum element of every non-empty bottom heap.
/// Each heap h carries an additive offset o_h; a stored key x in bottom heap
/// b has actual value x + o_b + o_top, and a stored key x in the top heap has
/// actual value x + o_top. add() therefore only bumps o_top, and meld() moves
/// the smaller list of bottom heaps into the larger one, rewriting each moved
/// offset by o_top(source) - o_top(destination) so actual values are
/// preserved.
///
/// Ties between equal keys are broken by payload order, so extraction order
/// is fully deterministic. Payload must be strict-weak-orderable via <.
template <typename Payload>
class TwoLevelHeap {
public:
    struct Element {
        std::int64_t key = 0;
        Payload payload{};

        friend bool operator<(const Element& a, const Element& b) {
            if (a.key != b.key) return a.key < b.key;
            return a.payload < b.payload;
        }
    };

    TwoLevelHeap() = default;

    /// Builds a heap with a single bottom heap holding `elements`; O(n).
    explicit TwoLevelHeap(std::vector<Element> elements) {
        if (elements.empty()) return;
        size_ = elements.size();
        std::make_heap(elements.begin(), elements.end(), min_order);
        bottoms_.push_back(Bottom{std::move(elements), 0});
        top_.push_back(TopEntry{bottoms_[0].heap.front(), 0});
    }

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    std::size_t bottom_count() const { return bottoms_.size(); }

    /// Adds `delta` to the actual value of every contained element; O(1).
    void add(std::int64_t delta) { top_offset_ += delta; }

    /// Removes and returns the element with the smallest actual value;
    /// O(log n). Throws on an empty heap.
    Element extract_min() {
        if (empty()) throw std::runtime_error("two-level heap underflow");
        std::pop_heap(top_.begin(), top_.end(), top_min_order);
        TopEntry entry = std::move(top_.back());
        top_.pop_back();

        Bottom& bottom = bottoms_[entry.bottom];
        std::pop_heap(bottom.heap.begin(), bottom.heap.end(), min_order);
        bottom.heap.pop_back();
        if (!bottom.heap.empty()) {
            Element next = bottom.heap.front();
            next.key += bottom.offset;
            top_.push_back(TopEntry{std::move(next), entry.bottom});
            std::push_heap(top_.begin(), top_.end(), top_min_order);
        }
        --size_;
        return Element{entry.element.key + top_offset_, std::move(entry.element.payload)};
    }

    /// Merges two heaps, consuming both; actual values are preserved.
    static TwoLevelHeap meld(TwoLevelHeap a, TwoLevelHeap b) {
        // Move the shorter bottom-heap list into the longer one, so any
        // bottom heap changes owner O(log) times over a run of melds.
        TwoLevelHeap& into = a.bottoms_.size() >= b.bottoms_.size() ? a : b;
        TwoLevelHeap& from = a.bottoms_.size() >= b.bottoms_.size() ? b : a;
        const std::int64_t shift = from.top_offset_ - into.top_offset_;
        for (Bottom& bottom : from.bottoms_) {
            bottom.offset += shift;
            const auto index = static_cast<std::uint32_t>(into.bottoms_.size());
            if (!bottom.heap.empty()) {
                Element least = bottom.heap.front();
                least.key += bottom.offset;
                into.top_.push_back(TopEntry{std::move(least), index});
                std::push_heap(into.top_.begin(), into.top_.end(), top_min_order);
            }
            into.bottoms_.push_back(std::move(bottom));
        }
        into.size_ += from.size_;
        return std::move(into);
    }

private:
    struct Bottom {
        std::vector<Element> heap;  // binary min-heap of raw keys
        std::int64_t offset = 0;    // o_b
    };
    struct TopEntry {
        Element element;       // key already includes the owning bottom's offset
        std::uint32_t bottom;  // index into bottoms_
    };

    // std::*_heap build max-heaps, so order by "greater" to get min-heaps.
    static bool min_order(const Element& a, const Element& b) { return b < a; }
    static bool top_min_order(const TopEntry& a, const TopEntry& b) {
        return b.element < a.element;
    }

    std::vector<TopEntry> top_;
    std::vector<Bottom> bottoms_;
    std::int64_t top_offset_ = 0;  // o_t
    std::size_t size_ = 0;
};

}  // namespace hrlz
