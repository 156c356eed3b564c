#pragma once
// Lattice geometry primitives shared by every orthoguard module.
//
// All coordinates are signed 64-bit integers and every predicate in the
// library is an exact integer comparison. Rational points (used only by the
// visibility verifier) carry an explicit positive denominator.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orthoguard {

using Coord = std::int64_t;
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

constexpr int index(Axis a) noexcept { return static_cast<int>(a); }
constexpr Axis axis_from_index(int i) noexcept { return static_cast<Axis>(i); }

inline const char* axis_name(Axis a) noexcept {
    switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
    }
    return "?";
}

inline std::optional<Axis> parse_axis(const std::string& s) {
    if (s == "X" || s == "x") return Axis::X;
    if (s == "Y" || s == "y") return Axis::Y;
    if (s == "Z" || s == "z") return Axis::Z;
    return std::nullopt;
}

/// Bit set over {X, Y, Z}.
class AxisSet {
public:
    constexpr AxisSet() = default;
    constexpr void insert(Axis a) noexcept { bits_ |= static_cast<std::uint8_t>(1u << index(a)); }
    constexpr bool contains(Axis a) const noexcept { return (bits_ >> index(a)) & 1u; }
    constexpr int size() const noexcept { return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::uint8_t bits() const noexcept { return bits_; }
    constexpr bool operator==(const AxisSet&) const = default;

    std::string to_string() const {
        std::string out;
        for (Axis a : kAxes)
            if (contains(a)) out += axis_name(a);
        return out;
    }

private:
    std::uint8_t bits_ = 0;
};

struct Point3 {
    Coord x = 0;
    Coord y = 0;
    Coord z = 0;

    constexpr Coord operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr Coord& operator[](int i) noexcept { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr Coord operator[](Axis a) const noexcept { return (*this)[index(a)]; }
    constexpr Coord& operator[](Axis a) noexcept { return (*this)[index(a)]; }

    constexpr auto operator<=>(const Point3&) const = default;

    friend constexpr Point3 operator+(Point3 a, const Point3& b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Point3 operator-(Point3 a, const Point3& b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend std::ostream& operator<<(std::ostream& os, const Point3& p) {
        return os << '(' << p.x << ", " << p.y << ", " << p.z << ')';
    }
};

constexpr Point3 cross(const Point3& a, const Point3& b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr Coord dot(const Point3& a, const Point3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Point3 unit(Axis a, Coord sign = 1) noexcept {
    Point3 p;
    p[a] = sign;
    return p;
}

struct Point3Hash {
    std::size_t operator()(const Point3& p) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < 3; ++i) {
            h ^= static_cast<std::uint64_t>(p[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Axis-aligned box with integer corners; `lo < hi` on every axis for a
/// non-degenerate box.
struct Box {
    Point3 lo;
    Point3 hi;

    constexpr Coord extent(Axis a) const noexcept { return hi[a] - lo[a]; }
    constexpr Coord volume() const noexcept { return extent(Axis::X) * extent(Axis::Y) * extent(Axis::Z); }
    constexpr bool valid() const noexcept { return lo.x < hi.x && lo.y < hi.y && lo.z < hi.z; }

    /// Closed boxes share at least one point.
    constexpr bool touches(const Box& o) const noexcept {
        for (int i = 0; i < 3; ++i)
            if (hi[i] < o.lo[i] || o.hi[i] < lo[i]) return false;
        return true;
    }
    constexpr bool contains(const Point3& p) const noexcept {
        for (int i = 0; i < 3; ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
    constexpr auto operator<=>(const Box&) const = default;
    friend std::ostream& operator<<(std::ostream& os, const Box& b) { return os << '[' << b.lo << ' ' << b.hi << ']'; }
};

/// Axis-aligned rectangle in a horizontal plane.
struct Rect {
    Coord x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    constexpr Coord area() const noexcept { return (x1 - x0) * (y1 - y0); }
    constexpr bool contains_closed(Coord x, Coord y) const noexcept { return x0 <= x && x <= x1 && y0 <= y && y <= y1; }
    constexpr bool touches(const Rect& o) const noexcept {
        return !(x1 < o.x0 || o.x1 < x0 || y1 < o.y0 || o.y1 < y0);
    }
    constexpr auto operator<=>(const Rect&) const = default;
};

constexpr Rect footprint(const Box& b) noexcept { return {b.lo.x, b.lo.y, b.hi.x, b.hi.y}; }

constexpr Rect intersect(const Rect& a, const Rect& b) noexcept {
    return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
}

/// Floor division for possibly negative numerators.
constexpr Coord floor_div(Coord a, Coord b) noexcept {
    Coord q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// ---------------------------------------------------------------------------
// Errors

enum class ErrorCode {
    Syntax,
    NonIntegerCoordinate,
    IndexOutOfRange,
    InvalidPolyhedron,
    NonManifold,
    ThreeReflexDirections,
    NonIntegralGenus,
    BrickNotBox,
    IsolatedConvexBrick,
    ComponentNotDoubleCastle,
    PostconditionViolation,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) noexcept {
    switch (c) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::NonIntegerCoordinate: return "NonIntegerCoordinate";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidPolyhedron: return "InvalidPolyhedron";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::ThreeReflexDirections: return "ThreeReflexDirections";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::BrickNotBox: return "BrickNotBox";
    case ErrorCode::IsolatedConvexBrick: return "IsolatedConvexBrick";
    case ErrorCode::ComponentNotDoubleCastle: return "ComponentNotDoubleCastle";
    case ErrorCode::PostconditionViolation: return "PostconditionViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

    /// Bug-class failures (a broken internal invariant rather than bad input).
    bool is_internal() const noexcept {
        return code_ == ErrorCode::BrickNotBox || code_ == ErrorCode::ComponentNotDoubleCastle ||
               code_ == ErrorCode::PostconditionViolation;
    }

private:
    ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Small disjoint-set forest used by several modules.

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n = 0) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace orthoguard
