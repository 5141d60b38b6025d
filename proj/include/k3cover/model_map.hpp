#pragma once

// Birational maps between genus-one models, as chains of weighted projective
// polynomial maps with explicit exceptional points.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "surface.hpp"
#include "weierstrass.hpp"

namespace k3cover {

/// Coordinates of a point in a (weighted) projective plane.
using ModelPoint = std::vector<TowerElement>;
using Weights = std::array<int, 3>;

inline constexpr Weights kPlaneWeights{1, 1, 1};
/// [U : V : Z] with v^2 = h(u), u = U/Z, v = V/Z^2.
inline constexpr Weights kQuarticWeights{1, 2, 1};

/// Scales so the last nonzero weight-one coordinate is 1 (or the lone
/// weight-two coordinate is 1).
inline ModelPoint canonical_point(ModelPoint p, const Weights& w) {
    for (int i = 2; i >= 0; --i) {
        if (p[i].is_zero()) continue;
        if (w[i] != 1) continue;
        TowerElement inv = p[i].inverse();
        for (int j = 0; j < 3; ++j) {
            TowerElement s = inv;
            for (int e = 1; e < w[j]; ++e) s = s * inv;
            p[j] = p[j] * s;
        }
        return p;
    }
    for (auto& c : p)
        if (!c.is_zero()) c = TowerElement(1);
    return p;
}

inline bool same_point(const ModelPoint& a, const ModelPoint& b, const Weights& w) {
    return canonical_point(a, w) == canonical_point(b, w);
}

inline bool is_null(const ModelPoint& p) {
    for (const auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

/// A map given by alternative tuples of (weighted) homogeneous polynomials;
/// the first tuple not vanishing identically at the point is used.
struct PolyMap {
    std::vector<std::vector<Form>> charts;

    std::optional<ModelPoint> apply(const ModelPoint& p) const {
        for (const auto& comps : charts) {
            ModelPoint out;
            for (const auto& c : comps) out.push_back(c(p));
            if (!is_null(out)) return out;
        }
        return std::nullopt;
    }
};

struct MapStage {
    std::string name;
    Weights source_weights;
    Weights target_weights;
    PolyMap forward;
    PolyMap backward;
    /// (source, target) pairs where the polynomial maps are undefined.
    std::vector<std::pair<ModelPoint, ModelPoint>> exceptional;
    /// Optional solver for backward images at points outside the table.
    std::function<std::optional<ModelPoint>(const ModelPoint&)> backward_fallback;

    std::optional<ModelPoint> push(const ModelPoint& p) const {
        for (const auto& [s, t] : exceptional)
            if (same_point(s, p, source_weights)) return canonical_point(t, target_weights);
        auto r = forward.apply(p);
        if (!r) return std::nullopt;
        return canonical_point(*r, target_weights);
    }
    std::optional<ModelPoint> pull(const ModelPoint& p) const {
        for (const auto& [s, t] : exceptional)
            if (same_point(t, p, target_weights)) return canonical_point(s, source_weights);
        auto r = backward.apply(p);
        if (!r && backward_fallback) r = backward_fallback(p);
        if (!r) return std::nullopt;
        return canonical_point(*r, source_weights);
    }
};

/// A chain of stages from a source model to a Weierstrass model.
struct ModelMap {
    std::vector<MapStage> stages;

    std::optional<ModelPoint> forward(ModelPoint p) const {
        for (const auto& s : stages) {
            auto r = s.push(p);
            if (!r) return std::nullopt;
            p = std::move(*r);
        }
        return p;
    }
    std::optional<ModelPoint> backward(ModelPoint p) const {
        for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
            auto r = it->pull(p);
            if (!r) return std::nullopt;
            p = std::move(*r);
        }
        return p;
    }
    Weights source_weights() const { return stages.front().source_weights; }
};

inline ECPoint<TowerField> to_ec_point(const ModelPoint& p) {
    auto c = canonical_point(p, kPlaneWeights);
    if (c[2].is_zero()) return ECPoint<TowerField>::at_infinity();
    return ECPoint<TowerField>::affine(c[0], c[1]);
}

inline ModelPoint from_ec_point(const ECPoint<TowerField>& p) {
    if (p.is_infinity()) return {TowerElement(0), TowerElement(1), TowerElement(0)};
    return {p.x, p.y, TowerElement(1)};
}

/// Affine point (u, v) of a quartic model.
inline ModelPoint quartic_point(const TowerElement& u, const TowerElement& v) { return {u, v, TowerElement(1)}; }

}  // namespace k3cover
