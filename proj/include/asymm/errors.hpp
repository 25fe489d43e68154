// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace asymm {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction / queries
struct loop_edge_error : error {
    using error::error;
};
struct vertex_out_of_range_error : error {
    using error::error;
};
struct disconnected_error : error {
    using error::error;
};

// permutation engine
struct cap_exceeded_error : error {
    using error::error;
};

// palettes
struct zero_length_error : error {
    using error::error;
};
struct infeasible_split_error : error {
    using error::error;
};
struct palette_exhausted_error : error {
    using error::error;
};

// colorer
struct hypothesis_violated_error : error {
    using error::error;
};

// oracle
struct budget_exceeded_error : error {
    using error::error;
};
struct too_large_error : error {
    using error::error;
};

// io
struct parse_error : error {
    parse_error(const std::string& what, int line) : error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    explicit parse_error(const std::string& what) : error(what), line(0) {}
    int line;
};
struct partial_coloring_error : error {
    using error::error;
};
struct bad_params_error : error {
    using error::error;
};

} // namespace asymm
