// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "colorer.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "palette.hpp"

namespace asymm {

// exit codes: 0 success, 1 verification found a witness, 2 hypothesis
// violated, 3 completed coloring failed verification, 64 usage, 66 io
inline constexpr int exit_ok = 0;
inline constexpr int exit_witness = 1;
inline constexpr int exit_hypothesis = 2;
inline constexpr int exit_proof_gap = 3;
inline constexpr int exit_usage = 64;
inline constexpr int exit_io = 66;

namespace detail {

struct io_failure {
    std::string message;
};

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_failure{"cannot open '" + path + "'"};
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

/// A line of "u v" pairs (or an n= header or a comment) means edge list;
/// a single token per line means graph6.
inline graph parse_graph_text(const std::string& text, const std::string& format) {
    if (format == "edgelist") return parse_edgelist(text);
    if (format == "graph6") return parse_graph6(text);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a)) continue;
        if (a[0] == '#' || a.rfind("n=", 0) == 0) return parse_edgelist(text);
        if (ls >> b) return parse_edgelist(text);
        return parse_graph6(text);
    }
    return parse_edgelist(text); // empty input: empty edge list
}

inline int run_selftest(std::ostream& out) {
    auto fail = [&](const std::string& what) {
        out << "selftest: FAILED: " << what << "\n";
        return 1;
    };

    // palette lemma counts and shape
    for (int k = 1; k <= 60; ++k) {
        auto ps = uniform_palettes(k);
        std::size_t expected = uniform_palette_count(k);
        if (ps.size() != expected || ps.size() < static_cast<std::size_t>(k) + 1)
            return fail("uniform palette count for k=" + std::to_string(k));
        for (const auto& p : ps)
            if (!is_uniform(p) || 2 * p.red > k || p.size() != k) return fail("uniform palette shape for k=" + std::to_string(k));
    }

    // palette sequence lower bound on small size vectors
    for (int k1 = 1; k1 <= 4; ++k1)
        for (int k2 = 1; k2 <= 4; ++k2) {
            auto it = uniform_palette_seqs({k1, k2});
            std::size_t count = 0;
            while (it.next()) ++count;
            if (count < static_cast<std::size_t>(k1 + k2 + 1)) return fail("palette sequence bound");
        }

    // split soundness on small palettes
    for (int k = 2; k <= 8; ++k)
        for (const auto& p : uniform_palettes(k))
            for (int k1 = 1; k1 < k; ++k1) {
                auto parts = split_palette(p, {k1, k - k1});
                palette sum{};
                for (const auto& q : parts) {
                    if (!is_uniform(q)) return fail("split produced a non-uniform part");
                    sum.red += q.red;
                    sum.blue += q.blue;
                    sum.green += q.green;
                }
                if (!(sum == p)) return fail("split parts do not sum to the palette");
            }

    // base complete-graph colorings
    for (int n = 3; n <= 9; ++n) {
        const auto& col = complete_graph_coloring(n);
        graph kn = make_complete(n);
        if (!is_asymmetric(kn, col)) return fail("complete coloring not asymmetric for n=" + std::to_string(n));
        for (vertex v = 0; v < n; ++v) {
            bool non_green = false;
            for (vertex w : kn.neighbors(v))
                if (col[kn.edge_index(v, w)] != color::green) non_green = true;
            if (!non_green) return fail("complete coloring lacks a non-green edge at a vertex");
        }
    }

    // a few end-to-end colorings
    for (const graph& g : {make_cycle(5), make_complete(4), make_complete_bipartite(2, 4), make_petersen()}) {
        color_result res = color_graph(g, {.paranoid = true});
        if (!res.asymmetric() || !res.coloring.total()) return fail("procedure failed on a sample graph");
    }

    out << "selftest: all checks passed\n";
    return 0;
}

} // namespace detail

/// The command-line surface. Streams are injected so the whole CLI is
/// testable in-process.
inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"asymmetric 3-edge-colorings of graphs with min degree >= max degree / 2"};
    app.require_subcommand(1);

    auto* color_cmd = app.add_subcommand("color", "color a graph and verify the result");
    std::string color_file;
    std::string color_format = "auto";
    std::string color_out = "json";
    bool color_paranoid = false;
    color_cmd->add_option("file", color_file, "graph file, '-' for stdin")->required();
    color_cmd->add_option("--format", color_format)->check(CLI::IsMember({"auto", "graph6", "edgelist"}));
    color_cmd->add_option("--out", color_out)->check(CLI::IsMember({"json", "dot"}));
    color_cmd->add_flag("--paranoid", color_paranoid, "check the structural conditions after every step");

    auto* verify_cmd = app.add_subcommand("verify", "verify a coloring document against a graph");
    std::string verify_graph_file, verify_coloring_file;
    verify_cmd->add_option("graph", verify_graph_file)->required();
    verify_cmd->add_option("coloring", verify_coloring_file)->required();

    auto* dprime_cmd = app.add_subcommand("dprime", "exact distinguishing index by brute force");
    std::string dprime_file;
    int dprime_max = 3;
    std::uint64_t dprime_budget = default_oracle_budget;
    dprime_cmd->add_option("file", dprime_file)->required();
    dprime_cmd->add_option("--max-colors", dprime_max)->check(CLI::PositiveNumber);
    dprime_cmd->add_option("--budget", dprime_budget);

    auto* census_cmd = app.add_subcommand("census", "distinguishing-index census of small connected graphs");
    int census_n = 0;
    bool census_hyp = false;
    std::uint64_t census_budget = default_oracle_budget;
    unsigned census_jobs = 0;
    census_cmd->add_option("--n", census_n, "maximum vertex count")->required()->check(CLI::Range(1, 6));
    census_cmd->add_flag("--hypothesis-only", census_hyp);
    census_cmd->add_option("--budget", census_budget);
    census_cmd->add_option("--jobs", census_jobs);

    auto* gen_cmd = app.add_subcommand("gen", "emit a named graph family as graph6");
    std::string gen_family;
    std::vector<std::string> gen_params;
    gen_cmd->add_option("family", gen_family)->required();
    gen_cmd->add_option("params", gen_params);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in palette and base-coloring checks");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (app.got_subcommand(color_cmd)) {
            graph g = detail::parse_graph_text(detail::read_input(color_file, in), color_format);
            color_result res;
            try {
                res = color_graph(g, {.paranoid = color_paranoid});
            } catch (const hypothesis_violated_error& e) {
                err << "error: " << e.what() << "\n";
                return exit_hypothesis;
            }
            if (!res.asymmetric()) {
                out << coloring_document(g, res.coloring, res.root, false, res.witness).dump(2) << "\n";
                err << "error: completed coloring admits a nontrivial automorphism (witness in document)\n";
                return exit_proof_gap;
            }
            if (color_out == "dot")
                out << emit_dot(g, res.coloring);
            else
                out << coloring_document(g, res.coloring, res.root, true).dump(2) << "\n";
            return exit_ok;
        }

        if (app.got_subcommand(verify_cmd)) {
            graph g = detail::parse_graph_text(detail::read_input(verify_graph_file, in), "auto");
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(detail::read_input(verify_coloring_file, in));
            } catch (const nlohmann::json::exception& e) {
                throw parse_error(std::string("bad coloring document: ") + e.what());
            }
            edge_coloring col = parse_coloring_document(doc, g);
            auto witness = nontrivial_automorphism(g, col);
            if (!witness) {
                out << "asymmetric\n";
                return exit_ok;
            }
            out << "witness:";
            for (vertex v : witness->image) out << " " << v;
            out << "\n";
            return exit_witness;
        }

        if (app.got_subcommand(dprime_cmd)) {
            graph g = detail::parse_graph_text(detail::read_input(dprime_file, in), "auto");
            auto d = distinguishing_index(g, dprime_max, dprime_budget);
            if (d)
                out << *d << "\n";
            else
                out << "none <= " << dprime_max << "\n";
            return exit_ok;
        }

        if (app.got_subcommand(census_cmd)) {
            auto rows = census(census_n, census_hyp, census_budget, census_jobs);
            for (const auto& row : rows) {
                out << encode_graph6(row.g) << " " << row.st.delta << " " << row.st.max_degree << " " << (row.hypothesis ? 1 : 0)
                    << " ";
                if (row.dprime)
                    out << *row.dprime;
                else
                    out << "-";
                out << "\n";
            }
            return exit_ok;
        }

        if (app.got_subcommand(gen_cmd)) {
            out << encode_graph6(generate(gen_family, gen_params)) << "\n";
            return exit_ok;
        }

        if (app.got_subcommand(selftest_cmd)) return detail::run_selftest(out);
    } catch (const detail::io_failure& e) {
        err << "error: " << e.message << "\n";
        return exit_io;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const bad_params_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_witness;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

} // namespace asymm
