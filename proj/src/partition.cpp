#include "qloops/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qloops/common.hpp"

namespace qloops {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw DomainError("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    }
    total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::from_unsorted(std::vector<int> parts) {
    std::erase_if(parts, [](int v) { return v <= 0; });
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> conj(static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
    return Partition(std::move(conj));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

Spin parse_spin(const std::string& text) {
    auto bad = [&] { return DomainError("invalid spin '" + text + "': expected e.g. 1/2, 1, 3/2"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            int s = std::stoi(text, &used);
            if (used != text.size() || s < 1) throw bad();
            return Spin{2 * s};
        }
        int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash) throw bad();
        std::string den_text = text.substr(slash + 1);
        int den = std::stoi(den_text, &used);
        if (used != den_text.size()) throw bad();
        if (den == 2 && num >= 1) return Spin{num};
        if (den == 1 && num >= 1) return Spin{2 * num};
    } catch (const std::logic_error&) {
        throw bad();
    }
    throw bad();
}

std::string format_spin(Spin s) {
    if (s.two_s % 2 == 0) return std::to_string(s.two_s / 2);
    return std::to_string(s.two_s) + "/2";
}

double log_bigint(const BigInt& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    if (x < 0) throw DomainError("log of negative integer");
    const unsigned bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 1000) return std::log(x.convert_to<double>());
    using Wide = boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(log(Wide(x)));
}

}  // namespace qloops
