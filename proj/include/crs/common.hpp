#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace crs {

using VertexId = int;
using Dist = long long;

// Saturating "unreachable" sentinel. Arithmetic with it must go through
// sat_add; plain + would overflow.
inline constexpr Dist kInf = std::numeric_limits<Dist>::max();

inline bool is_inf(Dist d) { return d == kInf; }

inline Dist sat_add(Dist a, Dist b) {
    if (a == kInf || b == kInf) return kInf;
    return a + b;
}

inline long long ceil_ll(double x) { return static_cast<long long>(std::ceil(x)); }

// ceil(4 * n^e * ln n), the iteration/hop budget used throughout.
inline long long budget(int n, double e) {
    if (n <= 1) return 1;
    return ceil_ll(4.0 * std::pow(static_cast<double>(n), e) * std::log(static_cast<double>(n)));
}

struct ConnectivityFailure : std::runtime_error {
    explicit ConnectivityFailure(const std::string& msg) : std::runtime_error(msg) {}
};
struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};
struct RootSetTooLarge : std::runtime_error {
    explicit RootSetTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};
struct WrongParity : std::runtime_error {
    explicit WrongParity(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotATree : std::runtime_error {
    explicit NotATree(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotASubgraph : std::runtime_error {
    explicit NotASubgraph(const std::string& msg) : std::runtime_error(msg) {}
};
struct MalformedLabel : std::runtime_error {
    explicit MalformedLabel(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoCommonTree : std::runtime_error {
    explicit NoCommonTree(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoTerminationByK : std::runtime_error {
    explicit NoTerminationByK(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace crs
