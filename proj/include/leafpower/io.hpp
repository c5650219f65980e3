#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafpower/errors.hpp"
#include "leafpower/graph.hpp"
#include "leafpower/leafroot.hpp"

namespace leafpower {

// Malformed file content; the message starts with "line N:" when a line is at fault.
struct parse_error : invalid_input {
    int line = 0;
    parse_error(int line_no, const std::string& msg)
        : invalid_input(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}
};

// Contents of a .gr file. Labeled files carry one range per edge of graph.edges().
struct GraphFile {
    Graph graph;
    std::optional<std::vector<Range>> ranges;

    bool labeled() const { return ranges.has_value(); }
    LabeledGraph as_labeled(int K) const;
};

// Format:
//   c <comment>
//   p lp <n> <m>
//   e <u> <v>            (1-based)
//   e <u> <v> <k1> <k2>  (labeled)
GraphFile parse_graph_file(const std::string& text);
GraphFile read_graph_file(const std::string& path);
std::string write_graph_file(const Graph& g);
std::string write_graph_file(const LabeledGraph& g);

// Parent-array witness: one line per node holding its parent (root points to itself),
// then a "leaves" line followed by "<node> <vertex name>" lines.
std::string write_witness(const LeafRootTree& t, const Graph& g);
LeafRootTree parse_witness(const std::string& text, const Graph& g);

// Newick text rooted at t.root; leaves carry vertex names.
std::string write_newick(const LeafRootTree& t, const Graph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace leafpower
