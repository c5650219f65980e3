#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/product.hpp"

// MSO2 formulas over G x C_k, built as fully expanded syntax trees.
namespace leafpower::mso {

enum class Sort { vertex, edge, vertex_set, edge_set };
const char* to_string(Sort s);

enum class Kind { exists, forall, conj, disj, neg, implies, iff, eq, inc, in, truth };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind = Kind::truth;
    // quantifiers
    Sort sort = Sort::vertex;
    std::vector<std::string> vars;
    std::string domain;  // "V", "E" or a set variable
    // atoms: eq(a, b), inc(edge, vertex), in(element, set)
    std::vector<std::string> args;
    std::vector<Formula> kids;
};

Formula exists(Sort s, std::vector<std::string> vars, std::string domain, Formula body);
Formula forall(Sort s, std::vector<std::string> vars, std::string domain, Formula body);
// One operand collapses to itself.
Formula all_of(std::vector<Formula> fs);
Formula any_of(std::vector<Formula> fs);
Formula negate(Formula f);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula equals(std::string a, std::string b);
Formula incident(std::string e, std::string v);
Formula member(std::string x, std::string set);
Formula truth();

bool same_structure(const Formula& a, const Formula& b);
long node_count(const Formula& f);

using Declarations = std::map<std::string, Sort>;

// Unbound names with sorts inferred from their use. Throws invalid_input on a sort clash.
Declarations free_variables(const Formula& f);
// Empty when every name is bound or declared and every atom is sort-correct.
std::vector<std::string> check_well_formed(const Formula& f, const Declarations& free);

// Name of the free edge set holding edges with base range [k1, k2].
std::string range_set_name(int k1, int k2);
Declarations recognition_free_variables();
Declarations labeled_free_variables(int K);

struct PredicateParams {
    std::vector<std::string> vars;  // argument names in signature order; defaults when empty
    int k = 0;                      // haspath, isroot, nonedge; k1 for edge
    int k2 = 0;                     // edge
};

// adjacent(a,b,S) leaf(l,X,S) acyclic(S) alignedwith(p,q) representative(v,l,S) represented(S)
// haspath(u,v,S; k) isroot(S; k) edge(S; k1,k2) nonedge(S; K)
Formula emit_predicate(const std::string& name, const PredicateParams& p = {});
Formula emit_recognition_formula(int k);
Formula emit_labeled_formula(int K);

enum class Style { sexpr, pretty };
std::string render(const Formula& f, Style style = Style::sexpr);

struct ParsedFormula {
    Formula formula;
    Declarations free;
};
// Reads the sexpr style. Throws parse_error with a line number.
ParsedFormula parse(const std::string& text);

// Lengthens a witness by one step: w_k = v and e_{k+1} = e_k.
struct HaspathWitness {
    std::vector<int> w;  // k-1 vertices
    std::vector<int> e;  // k edge indices
};
HaspathWitness extend_haspath_witness(const HaspathWitness& h, int v);

// Finite structure: vertices 0..n-1, indexed edges and named free sets as bitmasks.
struct Structure {
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::map<std::string, uint64_t> sets;

    // Product vertices and edges, "horizontal", and range sets when the product is labeled.
    static Structure of_product(const ProductGraph& p);
};

bool is_haspath_witness(const Structure& s, const HaspathWitness& h, int u, int v, uint64_t S);

// Values for free element or set variables. Set values are bitmasks.
using Assignment = std::map<std::string, uint64_t>;

// Naive model checking. Set quantifiers enumerate every subset, so domains above 20
// elements are refused with size_limit; at most 64 vertices and 64 edges.
bool evaluate(const Formula& f, const Structure& s, const Assignment& a = {});

// Closed formula on a product with at most 20 edges; larger products throw size_limit.
bool evaluate_on_product(const Formula& f, const ProductGraph& p);
constexpr int kMaxMicroEdges = 20;

} // namespace leafpower::mso
