// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"

namespace asymm {

/// A multiset of k = red+blue+green colors. Uniform means no color
/// occupies more than ceil(k/2) slots.
struct palette {
    int red = 0;
    int blue = 0;
    int green = 0;

    int size() const { return red + blue + green; }
    auto operator<=>(const palette&) const = default;
};

inline bool is_uniform(const palette& p) {
    int k = p.size();
    int cap = (k + 1) / 2;
    return p.red >= 0 && p.blue >= 0 && p.green >= 0 && p.red <= cap && p.blue <= cap && p.green <= cap;
}

/// All uniform k-palettes with red <= k/2, in a fixed enumeration order:
/// for even k = 2m the palettes (i, m-j, m-i+j) with i = 0..m, j = 0..i;
/// for odd k = 2m+1 the palettes (i, m+1-j, m-i+j) with i = 0..m,
/// j = 0..i+1. The counts are (m+1)(m+2)/2 and (m+1)(m+4)/2, so there are
/// always at least k+1 of them.
inline std::vector<palette> uniform_palettes(int k) {
    if (k < 1) throw zero_length_error("uniform_palettes requires k >= 1");
    std::vector<palette> out;
    int m = k / 2;
    if (k % 2 == 0) {
        out.reserve(static_cast<std::size_t>((m + 1) * (m + 2) / 2));
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= i; ++j) out.push_back({i, m - j, m - i + j});
    } else {
        out.reserve(static_cast<std::size_t>((m + 1) * (m + 4) / 2));
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= i + 1; ++j) out.push_back({i, m + 1 - j, m - i + j});
    }
    return out;
}

inline std::size_t uniform_palette_count(int k) {
    int m = k / 2;
    return k % 2 == 0 ? static_cast<std::size_t>((m + 1) * (m + 2) / 2) : static_cast<std::size_t>((m + 1) * (m + 4) / 2);
}

/// The two fixed palettes used for secondary targets: one with no red at
/// all, one with at most one red. For odd k (and in particular k = 1)
/// both are red-free.
inline std::pair<palette, palette> special_palettes(int k) {
    auto all = uniform_palettes(k);
    palette no_red{};
    bool have_no_red = false;
    for (const auto& p : all)
        if (p.red == 0) {
            no_red = p;
            have_no_red = true;
            break;
        }
    if (!have_no_red) throw error("no red-free uniform palette found"); // cannot happen for k >= 1
    palette second{};
    if (k % 2 == 1) {
        bool found = false;
        for (const auto& p : all)
            if (p.red == 0 && !(p == no_red)) {
                second = p;
                found = true;
                break;
            }
        if (!found) throw error("no second red-free uniform palette found");
    } else {
        bool found = false;
        for (const auto& p : all)
            if (p.red == 1) {
                second = p;
                found = true;
                break;
            }
        if (!found) throw error("no low-red uniform palette found");
    }
    return {no_red, second};
}

/// A sequence of uniform palettes of prescribed sizes (k_1, ..., k_s).
struct palette_seq {
    std::vector<palette> parts;

    std::vector<int> sizes() const {
        std::vector<int> s;
        s.reserve(parts.size());
        for (const auto& p : parts) s.push_back(p.size());
        return s;
    }
    auto operator<=>(const palette_seq&) const = default;
};

/// Lazily yields every uniform (k_1, ..., k_s)-palette: the cartesian
/// product of uniform_palettes(k_i), first component varying slowest.
class palette_seq_iterator {
public:
    explicit palette_seq_iterator(std::vector<int> sizes) {
        if (sizes.empty()) throw zero_length_error("empty size vector");
        for (int k : sizes) lists_.push_back(uniform_palettes(k));
        index_.assign(sizes.size(), 0);
    }

    std::optional<palette_seq> next() {
        if (done_) return std::nullopt;
        palette_seq seq;
        seq.parts.reserve(lists_.size());
        for (std::size_t i = 0; i < lists_.size(); ++i) seq.parts.push_back(lists_[i][index_[i]]);
        // advance, last component fastest
        for (std::size_t i = lists_.size(); i-- > 0;) {
            if (++index_[i] < lists_[i].size()) break;
            index_[i] = 0;
            if (i == 0) done_ = true;
        }
        return seq;
    }

private:
    std::vector<std::vector<palette>> lists_;
    std::vector<std::size_t> index_;
    bool done_ = false;
};

inline palette_seq_iterator uniform_palette_seqs(std::vector<int> sizes) { return palette_seq_iterator(std::move(sizes)); }

inline std::vector<color> palette_to_colors(const palette& p) {
    std::vector<color> out;
    out.reserve(static_cast<std::size_t>(p.size()));
    out.insert(out.end(), static_cast<std::size_t>(p.red), color::red);
    out.insert(out.end(), static_cast<std::size_t>(p.blue), color::blue);
    out.insert(out.end(), static_cast<std::size_t>(p.green), color::green);
    return out;
}

namespace detail {

/// First split (in lexicographic order of the per-part triples) whose
/// parts are all uniform and satisfy `accept(parts)`; nullopt if none.
template <typename Pred>
inline std::optional<std::vector<palette>> search_split(const palette& p, const std::vector<int>& sizes, Pred&& accept) {
    std::vector<palette> parts(sizes.size());
    palette left = p;

    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == sizes.size()) {
            return left.red == 0 && left.blue == 0 && left.green == 0 && accept(parts);
        }
        int k = sizes[idx];
        int cap = (k + 1) / 2;
        for (int a = 0; a <= std::min({cap, k, left.red}); ++a)
            for (int b = 0; b <= std::min({cap, k - a, left.blue}); ++b) {
                int c = k - a - b;
                if (c < 0 || c > cap || c > left.green) continue;
                parts[idx] = {a, b, c};
                left.red -= a;
                left.blue -= b;
                left.green -= c;
                if (self(self, idx + 1)) return true;
                left.red += a;
                left.blue += b;
                left.green += c;
            }
        return false;
    };
    if (rec(rec, 0)) return parts;
    return std::nullopt;
}

} // namespace detail

/// Partition a uniform palette into uniform palettes of the given sizes.
/// Greedy: each part draws one unit at a time from the color with the
/// largest remaining count (ties broken red < blue < green). If the
/// greedy result is not uniform everywhere, falls back to an exhaustive
/// search; an infeasible split aborts loudly, since it would contradict
/// the partition lemma.
inline std::vector<palette> split_palette(const palette& p, const std::vector<int>& sizes) {
    if (sizes.empty()) throw zero_length_error("empty size vector");
    int total = 0;
    for (int k : sizes) {
        if (k < 1) throw zero_length_error("split sizes must be positive");
        total += k;
    }
    if (total != p.size()) throw infeasible_split_error("split sizes do not sum to palette size");

    std::vector<palette> parts;
    parts.reserve(sizes.size());
    palette left = p;
    bool all_uniform = true;
    for (int k : sizes) {
        palette part{};
        for (int draw = 0; draw < k; ++draw) {
            if (left.blue > left.red && left.blue >= left.green) {
                ++part.blue;
                --left.blue;
            } else if (left.green > left.red && left.green > left.blue) {
                ++part.green;
                --left.green;
            } else {
                ++part.red;
                --left.red;
            }
        }
        all_uniform = all_uniform && is_uniform(part);
        parts.push_back(part);
    }
    if (all_uniform) return parts;

    auto found = detail::search_split(p, sizes, [](const std::vector<palette>&) { return true; });
    if (!found) throw infeasible_split_error("no uniform split exists");
    return *found;
}

/// Like split_palette, but the part at `nonred_part` must contain at
/// least one blue or green unit. Used when a specific target vertex has
/// to end up with a non-red edge.
inline std::vector<palette> split_palette_constrained(const palette& p, const std::vector<int>& sizes, std::size_t nonred_part) {
    if (nonred_part >= sizes.size()) throw bad_params_error("constrained part index out of range");
    auto ok = [nonred_part](const std::vector<palette>& parts) {
        return parts[nonred_part].blue + parts[nonred_part].green > 0;
    };
    auto greedy = split_palette(p, sizes);
    if (ok(greedy)) return greedy;
    auto found = detail::search_split(p, sizes, ok);
    if (!found) throw infeasible_split_error("no uniform split with a non-red unit in the required part");
    return *found;
}

} // namespace asymm
