#pragma once

// CSV helpers: '.' decimal point, '\n' line ends, 17 significant digits so
// that outputs round-trip doubles exactly and regression diffs are bit-exact.

#include <cstdio>
#include <ostream>
#include <string>

namespace dealersim {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename... Ts>
void csv_row(std::ostream& os, const Ts&... fields) {
    bool first = true;
    auto emit = [&](const auto& f) {
        if (!first) os << ',';
        first = false;
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(f)>>)
            os << fmt17(f);
        else
            os << f;
    };
    (emit(fields), ...);
    os << '\n';
}

}  // namespace dealersim
