#pragma once

#include <compare>
#include <cstdio>
#include <string>

#include "regsplit/errors.hpp"

namespace regsplit {

// Calendar quarter. Ordering is (year, quarter); the successor of (y,4)
// is (y+1,1).
struct Quarter {
    int year = 0;
    int q = 1;  // in {1,2,3,4}

    auto operator<=>(const Quarter&) const = default;

    // Linear index on the quarterly calendar; adjacent quarters differ by 1.
    int linear() const noexcept { return year * 4 + (q - 1); }

    Quarter next() const noexcept {
        return q == 4 ? Quarter{year + 1, 1} : Quarter{year, q + 1};
    }
    Quarter prev() const noexcept {
        return q == 1 ? Quarter{year - 1, 4} : Quarter{year, q - 1};
    }

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%dQ%d", year, q);
        return buf;
    }
};

inline Quarter quarter_from_linear(int idx) {
    int y = idx / 4;
    int r = idx % 4;
    if (r < 0) {
        y -= 1;
        r += 4;
    }
    return Quarter{y, r + 1};
}

inline Quarter make_quarter(int year, int q) {
    if (q < 1 || q > 4)
        throw Error(ErrorKind::parse,
                    "quarter must be in 1..4, got " + std::to_string(q));
    return Quarter{year, q};
}

}  // namespace regsplit
