// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace asymm {

/// An uncolored edge is a real state, not a missing value: partial
/// colorings are compared and preserved exactly like a fourth color class.
enum class color : std::uint8_t { red = 0, blue = 1, green = 2, uncolored = 3 };

inline const char* color_name(color c) {
    switch (c) {
        case color::red: return "red";
        case color::blue: return "blue";
        case color::green: return "green";
        default: return "uncolored";
    }
}

/// Per-edge colors, indexed by the graph's edge ids.
struct edge_coloring {
    std::vector<color> colors;

    edge_coloring() = default;
    explicit edge_coloring(std::size_t edge_count) : colors(edge_count, color::uncolored) {}
    static edge_coloring uncolored_for(const graph& g) { return edge_coloring(static_cast<std::size_t>(g.edge_count())); }

    color& operator[](std::size_t i) { return colors[i]; }
    color operator[](std::size_t i) const { return colors[i]; }
    std::size_t size() const { return colors.size(); }

    bool total() const {
        for (color c : colors)
            if (c == color::uncolored) return false;
        return true;
    }

    std::size_t colored_count() const {
        std::size_t k = 0;
        for (color c : colors)
            if (c != color::uncolored) ++k;
        return k;
    }

    bool operator==(const edge_coloring& other) const { return colors == other.colors; }
};

} // namespace asymm
