#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "outerspace/rng.hpp"

namespace outerspace {

// The deployment square S = [0,1]^2 and the routing torus T = [0,2)^2.
inline constexpr double kSquareSide = 1.0;
inline constexpr double kTorusSide = 2.0;

/// Position on the unit square. 1.0 of normalized length corresponds to the
/// physical side of the deployment area.
struct SquarePoint {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const SquarePoint&, const SquarePoint&) = default;
};

/// Position on the torus, coordinates reduced modulo the torus side.
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// One of the four reflection selections that define a square point's torus
/// image: each coordinate is either kept or mirrored to side - coordinate.
struct ImageChoice {
    bool reflect_x = false;
    bool reflect_y = false;

    constexpr int index() const { return (reflect_x ? 1 : 0) | (reflect_y ? 2 : 0); }
    static constexpr ImageChoice from_index(int i) {
        return ImageChoice{(i & 1) != 0, (i & 2) != 0};
    }
    friend bool operator==(const ImageChoice&, const ImageChoice&) = default;
};

inline constexpr int kImageChoiceCount = 4;

inline double square_distance(const SquarePoint& a, const SquarePoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Per-coordinate torus distance: direct separation or the wraparound one,
// whichever is shorter.
inline double torus_coordinate_distance(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, kTorusSide - d);
}

inline double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    const double dx = torus_coordinate_distance(a.x, b.x);
    const double dy = torus_coordinate_distance(a.y, b.y);
    return std::sqrt(dx * dx + dy * dy);
}

/// Image of a square point on the torus under the given reflection choice.
/// Coordinates are reduced mod 2, so the reflected image of 0 is 0 (2 == 0).
inline TorusPoint map_point(const SquarePoint& p, const ImageChoice& c) {
    double x = c.reflect_x ? kTorusSide - p.x : p.x;
    double y = c.reflect_y ? kTorusSide - p.y : p.y;
    if (x >= kTorusSide) x -= kTorusSide;
    if (y >= kTorusSide) y -= kTorusSide;
    return TorusPoint{x, y};
}

/// Deterministic per-node image assignment: every party derives the same
/// choice for a node from (global seed, node id), so no agreement protocol
/// is needed. Equidistribution over the four choices is a tested property.
class FairMapper {
public:
    explicit FairMapper(std::uint64_t seed) : seed_(seed) {}

    ImageChoice image_choice(std::uint64_t node_id) const {
        const std::uint64_t h = splitmix64(splitmix64(seed_) ^ splitmix64(node_id));
        return ImageChoice::from_index(static_cast<int>(h & 3));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

inline ImageChoice node_image_choice(const FairMapper& mapper, std::uint64_t node_id) {
    return mapper.image_choice(node_id);
}

/// One of the four choices uniformly at random from the caller's stream.
inline ImageChoice random_image_choice(Rng& rng) {
    return ImageChoice::from_index(static_cast<int>(rng.next_below(kImageChoiceCount)));
}

inline SquarePoint random_square_point(Rng& rng) {
    return SquarePoint{rng.next_unit(), rng.next_unit()};
}

inline TorusPoint random_torus_point(Rng& rng) {
    return TorusPoint{rng.next_unit() * kTorusSide, rng.next_unit() * kTorusSide};
}

}  // namespace outerspace
