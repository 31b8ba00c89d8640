#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace toxspan {

/// Sorted set of token positions marked toxic. The operands of the span
/// metrics: ground truth and prediction sets live in the same token index
/// space of one encoded sample.
class SpanOffsetSet {
public:
    SpanOffsetSet() = default;
    SpanOffsetSet(std::initializer_list<int> xs) : SpanOffsetSet(std::vector<int>(xs)) {}

    explicit SpanOffsetSet(std::vector<int> positions) : positions_(std::move(positions)) {
        std::sort(positions_.begin(), positions_.end());
        positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    }

    const std::vector<int>& positions() const { return positions_; }
    bool empty() const { return positions_.empty(); }
    std::size_t size() const { return positions_.size(); }

    bool contains(int p) const {
        return std::binary_search(positions_.begin(), positions_.end(), p);
    }

    std::size_t intersection_size(const SpanOffsetSet& other) const {
        std::size_t n = 0;
        auto a = positions_.begin();
        auto b = other.positions_.begin();
        while (a != positions_.end() && b != other.positions_.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else { ++n; ++a; ++b; }
        }
        return n;
    }

    bool operator==(const SpanOffsetSet& other) const = default;

private:
    std::vector<int> positions_;
};

}  // namespace toxspan
