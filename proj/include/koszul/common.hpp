#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace koszul {

// Thrown on malformed inputs (dimension mismatches, unknown names, bad ring
// kinds).  Mathematical outcomes ("not regular", "no homotopy") are never
// exceptions; they are verdicts.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency failure: two routes that must agree disagreed.
// Surfacing this is a feature; it is never swallowed.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& msg) : std::logic_error(msg) {}
};

// Closed integer interval of cohomological degrees.  lo > hi means empty.
struct DegreeWindow {
    int lo = 0;
    int hi = -1;
    bool empty() const { return lo > hi; }
    bool contains(int n) const { return lo <= n && n <= hi; }
    int length() const { return empty() ? 0 : hi - lo + 1; }
};

inline DegreeWindow window_union(DegreeWindow a, DegreeWindow b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

} // namespace koszul
