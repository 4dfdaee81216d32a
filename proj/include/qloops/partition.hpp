#pragma once

#include <compare>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace qloops {

/// Weakly decreasing vector of positive integers.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    /// Sorts descending and drops zeros; use for unordered input such as cycle lengths.
    static Partition from_unsorted(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return total_; }                     // |lambda|
    int length() const { return static_cast<int>(parts_.size()); }  // l(lambda)
    int operator[](int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }
    bool empty() const { return parts_.empty(); }

    /// Conjugate (transposed Young diagram).
    Partition conjugate() const;

    std::string to_string() const;

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

private:
    std::vector<int> parts_;
    int total_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

}  // namespace qloops
