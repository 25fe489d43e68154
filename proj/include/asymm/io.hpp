// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "perm.hpp"

namespace asymm {

// -- edge list text ---------------------------------------------------------

/// Lines of "u v"; blank lines and '#' comments are skipped; an optional
/// "n=<k>" header pins the vertex count (otherwise 1 + max vertex).
inline graph parse_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<int> n_header;
    std::vector<edge> edges;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first.rfind("n=", 0) == 0) {
            try {
                n_header = std::stoi(first.substr(2));
            } catch (...) {
                throw parse_error("bad n= header", lineno);
            }
            std::string extra;
            if (ls >> extra) throw parse_error("trailing tokens after n= header", lineno);
            continue;
        }
        long u, v;
        std::istringstream us(first);
        if (!(us >> u) || !us.eof()) throw parse_error("expected integer vertex", lineno);
        if (!(ls >> v)) throw parse_error("expected two vertices", lineno);
        std::string extra;
        if (ls >> extra) throw parse_error("trailing tokens after edge", lineno);
        if (u < 0 || v < 0) throw parse_error("negative vertex", lineno);
        edges.emplace_back(static_cast<vertex>(u), static_cast<vertex>(v));
        max_vertex = std::max(max_vertex, static_cast<int>(std::max(u, v)));
    }
    int n = n_header.value_or(max_vertex + 1);
    if (n < 0) n = 0;
    try {
        return graph(n, std::move(edges));
    } catch (const error& e) {
        throw parse_error(e.what());
    }
}

// -- graph6 -----------------------------------------------------------------

/// graph6: byte n+63 for n <= 62 (or 126 followed by three 6-bit bytes for
/// larger n), then the upper triangle of the adjacency matrix in
/// column-major order, packed into 6-bit groups, each +63.
inline std::string encode_graph6(const graph& g) {
    int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else {
        throw too_large_error("graph too large for this graph6 encoder");
    }
    int acc = 0, bits = 0;
    for (vertex v = 1; v < n; ++v)
        for (vertex u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                bits = 0;
            }
        }
    if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
    return out;
}

inline graph parse_graph6(std::string_view s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.rfind(">>graph6<<", 0) == 0) s.remove_prefix(10);
    if (s.empty()) throw parse_error("empty graph6 string");
    std::size_t pos = 0;
    auto next_byte = [&]() -> int {
        if (pos >= s.size()) throw parse_error("truncated graph6 string");
        int c = static_cast<unsigned char>(s[pos++]);
        if (c < 63 || c > 126) throw parse_error("invalid graph6 byte");
        return c - 63;
    };
    long n;
    int first = next_byte();
    if (first < 63) {
        n = first;
    } else {
        int a = next_byte(), b = next_byte(), c = next_byte();
        n = (static_cast<long>(a) << 12) | (b << 6) | c;
    }
    std::vector<edge> edges;
    int acc = 0, bits = 0;
    for (vertex v = 1; v < n; ++v)
        for (vertex u = 0; u < v; ++u) {
            if (bits == 0) {
                acc = next_byte();
                bits = 6;
            }
            if (acc & (1 << (bits - 1))) edges.emplace_back(u, v);
            --bits;
        }
    if (pos != s.size()) throw parse_error("trailing bytes in graph6 string");
    return graph(static_cast<int>(n), std::move(edges));
}

// -- DOT --------------------------------------------------------------------

/// Undirected DOT document with one color attribute per edge.
inline std::string emit_dot(const graph& g, const edge_coloring& col) {
    if (static_cast<int>(col.size()) != g.edge_count()) throw bad_params_error("coloring size does not match edge list");
    if (!col.total()) throw partial_coloring_error("DOT export requires a total coloring");
    std::ostringstream out;
    out << "graph asymm {\n";
    for (vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
    const auto& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i)
        out << "  " << es[i].first << " -- " << es[i].second << " [color=" << color_name(col[i]) << "];\n";
    out << "}\n";
    return out.str();
}

// -- graph families -----------------------------------------------------------

inline graph make_complete(int n) {
    if (n < 1) throw bad_params_error("complete graph needs n >= 1");
    std::vector<edge> es;
    for (vertex u = 0; u < n; ++u)
        for (vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return graph(n, std::move(es));
}

inline graph make_complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw bad_params_error("complete bipartite graph needs positive sides");
    std::vector<edge> es;
    for (vertex u = 0; u < a; ++u)
        for (vertex v = 0; v < b; ++v) es.emplace_back(u, a + v);
    return graph(a + b, std::move(es));
}

inline graph make_cycle(int n) {
    if (n < 3) throw bad_params_error("cycle needs n >= 3");
    std::vector<edge> es;
    for (vertex v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
    return graph(n, std::move(es));
}

inline graph make_path(int n) {
    if (n < 1) throw bad_params_error("path needs n >= 1");
    std::vector<edge> es;
    for (vertex v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return graph(n, std::move(es));
}

inline graph make_circulant(int n, const std::vector<int>& offsets) {
    if (n < 2) throw bad_params_error("circulant needs n >= 2");
    if (offsets.empty()) throw bad_params_error("circulant needs a connection set");
    std::vector<edge> es;
    for (int off : offsets) {
        if (off < 1 || off > n / 2) throw bad_params_error("circulant offsets must lie in 1..n/2");
        for (vertex v = 0; v < n; ++v) {
            vertex w = (v + off) % n;
            if (v != w) es.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    return graph(n, std::move(es));
}

inline graph make_hypercube(int d) {
    if (d < 1 || d > 20) throw bad_params_error("hypercube dimension out of range");
    int n = 1 << d;
    std::vector<edge> es;
    for (vertex v = 0; v < n; ++v)
        for (int b = 0; b < d; ++b) {
            vertex w = v ^ (1 << b);
            if (v < w) es.emplace_back(v, w);
        }
    return graph(n, std::move(es));
}

inline graph make_petersen() {
    std::vector<edge> es;
    for (vertex v = 0; v < 5; ++v) {
        es.emplace_back(v, (v + 1) % 5);            // outer cycle
        es.emplace_back(v, v + 5);                  // spokes
        es.emplace_back(v + 5, (v + 2) % 5 + 5);    // inner pentagram
    }
    return graph(10, std::move(es));
}

/// Family constructor used by the CLI: name plus string parameters.
inline graph generate(const std::string& family, const std::vector<std::string>& params) {
    auto as_int = [](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw bad_params_error("bad integer parameter: " + s);
            return v;
        } catch (const bad_params_error&) {
            throw;
        } catch (...) {
            throw bad_params_error("bad integer parameter: " + s);
        }
    };
    auto want = [&](std::size_t k) {
        if (params.size() != k) throw bad_params_error("family '" + family + "' expects " + std::to_string(k) + " parameter(s)");
    };
    if (family == "complete") {
        want(1);
        return make_complete(as_int(params[0]));
    }
    if (family == "complete_bipartite") {
        want(2);
        return make_complete_bipartite(as_int(params[0]), as_int(params[1]));
    }
    if (family == "cycle") {
        want(1);
        return make_cycle(as_int(params[0]));
    }
    if (family == "path") {
        want(1);
        return make_path(as_int(params[0]));
    }
    if (family == "circulant") {
        want(2);
        std::vector<int> offsets;
        std::string set = params[1];
        std::erase(set, '{');
        std::erase(set, '}');
        std::istringstream ss(set);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) offsets.push_back(as_int(tok));
        return make_circulant(as_int(params[0]), offsets);
    }
    if (family == "hypercube") {
        want(1);
        return make_hypercube(as_int(params[0]));
    }
    if (family == "petersen") {
        want(0);
        return make_petersen();
    }
    throw bad_params_error("unknown family '" + family + "'");
}

// -- coloring documents -------------------------------------------------------

inline constexpr const char* procedure_version = "asymm/1.0";

/// Machine-readable coloring: vertex count, one (u, v, color-name) triple
/// per edge, and metadata (root, procedure version, verification status).
inline nlohmann::json coloring_document(const graph& g, const edge_coloring& col, vertex root, bool verified,
                                        const std::optional<permutation>& witness = std::nullopt) {
    if (static_cast<int>(col.size()) != g.edge_count()) throw bad_params_error("coloring size does not match edge list");
    nlohmann::json doc;
    doc["n"] = g.vertex_count();
    auto& edges = doc["edges"] = nlohmann::json::array();
    const auto& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i)
        edges.push_back({es[i].first, es[i].second, color_name(col[i])});
    doc["meta"] = {{"root", root}, {"procedure", procedure_version}, {"verified", verified}};
    if (witness) doc["meta"]["witness"] = witness->image;
    return doc;
}

/// Parse a coloring document against a known graph; the edge sets must
/// match exactly.
inline edge_coloring parse_coloring_document(const nlohmann::json& doc, const graph& g) {
    if (!doc.contains("n") || !doc.contains("edges")) throw parse_error("coloring document needs 'n' and 'edges'");
    if (doc["n"].get<int>() != g.vertex_count()) throw parse_error("coloring document vertex count mismatch");
    if (static_cast<int>(doc["edges"].size()) != g.edge_count()) throw parse_error("coloring document edge count mismatch");
    edge_coloring col(static_cast<std::size_t>(g.edge_count()));
    std::vector<bool> seen(col.size(), false);
    for (const auto& entry : doc["edges"]) {
        if (!entry.is_array() || entry.size() != 3) throw parse_error("edge entries must be [u, v, color]");
        vertex u = entry[0].get<vertex>();
        vertex v = entry[1].get<vertex>();
        std::string name = entry[2].get<std::string>();
        int idx = g.edge_index(u, v);
        if (idx < 0) throw parse_error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not in graph");
        if (seen[static_cast<std::size_t>(idx)]) throw parse_error("duplicate edge in coloring document");
        seen[static_cast<std::size_t>(idx)] = true;
        color c;
        if (name == "red")
            c = color::red;
        else if (name == "blue")
            c = color::blue;
        else if (name == "green")
            c = color::green;
        else
            throw parse_error("unknown color name '" + name + "'");
        col[static_cast<std::size_t>(idx)] = c;
    }
    return col;
}

} // namespace asymm
