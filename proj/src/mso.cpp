#include "leafpower/mso.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "leafpower/errors.hpp"
#include "leafpower/io.hpp"

namespace leafpower::mso {

const char* to_string(Sort s) {
    switch (s) {
    case Sort::vertex: return "vertex";
    case Sort::edge: return "edge";
    case Sort::vertex_set: return "vset";
    case Sort::edge_set: return "eset";
    }
    return "?";
}

namespace {

Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Formula quantifier(Kind k, Sort s, std::vector<std::string> vars, std::string domain, Formula body) {
    if (vars.empty()) throw invalid_parameter("quantifier without variables");
    Node n;
    n.kind = k;
    n.sort = s;
    n.vars = std::move(vars);
    n.domain = std::move(domain);
    n.kids = {std::move(body)};
    return make(std::move(n));
}

Formula nary(Kind k, std::vector<Formula> fs) {
    if (fs.empty()) throw invalid_parameter("empty connective");
    if (fs.size() == 1) return fs[0];
    Node n;
    n.kind = k;
    n.kids = std::move(fs);
    return make(std::move(n));
}

Formula atom(Kind k, std::string a, std::string b) {
    Node n;
    n.kind = k;
    n.args = {std::move(a), std::move(b)};
    return make(std::move(n));
}

bool is_quantifier(Kind k) { return k == Kind::exists || k == Kind::forall; }
bool is_atom(Kind k) { return k == Kind::eq || k == Kind::inc || k == Kind::in; }
bool is_set(Sort s) { return s == Sort::vertex_set || s == Sort::edge_set; }
Sort set_of(Sort s) { return s == Sort::vertex ? Sort::vertex_set : Sort::edge_set; }

} // namespace

Formula exists(Sort s, std::vector<std::string> vars, std::string domain, Formula body) {
    return quantifier(Kind::exists, s, std::move(vars), std::move(domain), std::move(body));
}
Formula forall(Sort s, std::vector<std::string> vars, std::string domain, Formula body) {
    return quantifier(Kind::forall, s, std::move(vars), std::move(domain), std::move(body));
}
Formula all_of(std::vector<Formula> fs) { return nary(Kind::conj, std::move(fs)); }
Formula any_of(std::vector<Formula> fs) { return nary(Kind::disj, std::move(fs)); }
Formula negate(Formula f) {
    Node n;
    n.kind = Kind::neg;
    n.kids = {std::move(f)};
    return make(std::move(n));
}
Formula implies(Formula a, Formula b) {
    Node n;
    n.kind = Kind::implies;
    n.kids = {std::move(a), std::move(b)};
    return make(std::move(n));
}
Formula iff(Formula a, Formula b) {
    Node n;
    n.kind = Kind::iff;
    n.kids = {std::move(a), std::move(b)};
    return make(std::move(n));
}
Formula equals(std::string a, std::string b) { return atom(Kind::eq, std::move(a), std::move(b)); }
Formula incident(std::string e, std::string v) { return atom(Kind::inc, std::move(e), std::move(v)); }
Formula member(std::string x, std::string set) { return atom(Kind::in, std::move(x), std::move(set)); }
Formula truth() { return make(Node{}); }

bool same_structure(const Formula& a, const Formula& b) {
    if (a->kind != b->kind || a->args != b->args || a->kids.size() != b->kids.size()) return false;
    if (is_quantifier(a->kind) && (a->sort != b->sort || a->vars != b->vars || a->domain != b->domain)) return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (!same_structure(a->kids[i], b->kids[i])) return false;
    return true;
}

long node_count(const Formula& f) {
    long c = 1;
    for (auto& k : f->kids) c += node_count(k);
    return c;
}

// ---------------------------------------------------------------- free variables and sorts

namespace {

struct Inference {
    Declarations decl;
    bool changed = false;

    void note(const std::string& name, Sort s) {
        auto it = decl.find(name);
        if (it == decl.end()) {
            decl[name] = s;
            changed = true;
        } else if (it->second != s) {
            throw invalid_input("variable " + name + " used as both " + to_string(it->second) + " and " +
                                to_string(s));
        }
    }
};

using Scope = std::map<std::string, Sort>;

std::optional<Sort> sort_of(const std::string& name, const Scope& scope, const Declarations& decl) {
    if (auto it = scope.find(name); it != scope.end()) return it->second;
    if (auto it = decl.find(name); it != decl.end()) return it->second;
    return std::nullopt;
}

void infer(const Formula& f, Scope scope, Inference& inf) {
    auto free_note = [&](const std::string& name, Sort s) {
        if (!scope.count(name)) inf.note(name, s);
    };
    switch (f->kind) {
    case Kind::exists:
    case Kind::forall:
        if (f->domain != "V" && f->domain != "E" && !is_set(f->sort)) free_note(f->domain, set_of(f->sort));
        for (auto& v : f->vars) scope[v] = f->sort;
        infer(f->kids[0], scope, inf);
        return;
    case Kind::inc:
        free_note(f->args[0], Sort::edge);
        free_note(f->args[1], Sort::vertex);
        return;
    case Kind::in: {
        auto x = sort_of(f->args[0], scope, inf.decl);
        auto s = sort_of(f->args[1], scope, inf.decl);
        if (x && (*x == Sort::vertex || *x == Sort::edge)) free_note(f->args[1], set_of(*x));
        else if (s && *s == Sort::vertex_set) free_note(f->args[0], Sort::vertex);
        else if (s && *s == Sort::edge_set) free_note(f->args[0], Sort::edge);
        return;
    }
    case Kind::eq: {
        auto a = sort_of(f->args[0], scope, inf.decl);
        auto b = sort_of(f->args[1], scope, inf.decl);
        if (a) free_note(f->args[1], *a);
        if (b) free_note(f->args[0], *b);
        return;
    }
    default:
        for (auto& k : f->kids) infer(k, scope, inf);
    }
}

void collect_names(const Formula& f, Scope& bound, std::set<std::string>& out, std::vector<std::string> scope) {
    if (is_quantifier(f->kind)) {
        if (f->domain != "V" && f->domain != "E" &&
            std::find(scope.begin(), scope.end(), f->domain) == scope.end())
            out.insert(f->domain);
        for (auto& v : f->vars) scope.push_back(v);
    }
    for (auto& a : f->args)
        if (std::find(scope.begin(), scope.end(), a) == scope.end()) out.insert(a);
    for (auto& k : f->kids) collect_names(k, bound, out, scope);
}

} // namespace

Declarations free_variables(const Formula& f) {
    Inference inf;
    do {
        inf.changed = false;
        infer(f, {}, inf);
    } while (inf.changed);
    Scope bound;
    std::set<std::string> names;
    collect_names(f, bound, names, {});
    Declarations out;
    for (auto& n : names) {
        auto it = inf.decl.find(n);
        out[n] = it == inf.decl.end() ? Sort::vertex : it->second;
    }
    return out;
}

namespace {

void check(const Formula& f, Scope scope, const Declarations& free, std::vector<std::string>& problems) {
    auto lookup = [&](const std::string& name) -> std::optional<Sort> {
        auto s = sort_of(name, scope, free);
        if (!s) problems.push_back("unbound name " + name);
        return s;
    };
    switch (f->kind) {
    case Kind::exists:
    case Kind::forall: {
        if (f->kids.size() != 1) problems.push_back("quantifier needs one body");
        if (f->vars.empty()) problems.push_back("quantifier without variables");
        bool ok_domain = false;
        if (f->sort == Sort::vertex_set) ok_domain = f->domain == "V";
        else if (f->sort == Sort::edge_set) ok_domain = f->domain == "E";
        else if (f->domain == "V") ok_domain = f->sort == Sort::vertex;
        else if (f->domain == "E") ok_domain = f->sort == Sort::edge;
        else if (auto d = lookup(f->domain)) ok_domain = *d == set_of(f->sort);
        if (!ok_domain) problems.push_back(std::string("bad domain ") + f->domain + " for " + to_string(f->sort));
        for (auto& v : f->vars) {
            if (v == "V" || v == "E") problems.push_back("reserved name bound: " + v);
            scope[v] = f->sort;
        }
        for (auto& k : f->kids) check(k, scope, free, problems);
        return;
    }
    case Kind::conj:
    case Kind::disj:
        if (f->kids.size() < 2) problems.push_back("connective needs two operands");
        break;
    case Kind::neg:
        if (f->kids.size() != 1) problems.push_back("negation needs one operand");
        break;
    case Kind::implies:
    case Kind::iff:
        if (f->kids.size() != 2) problems.push_back("binary connective needs two operands");
        break;
    case Kind::truth:
        break;
    case Kind::eq:
    case Kind::inc:
    case Kind::in: {
        if (f->args.size() != 2 || !f->kids.empty()) {
            problems.push_back("atom needs two names");
            return;
        }
        auto a = lookup(f->args[0]);
        auto b = lookup(f->args[1]);
        if (!a || !b) return;
        bool ok = false;
        if (f->kind == Kind::eq) ok = *a == *b && !is_set(*a);
        if (f->kind == Kind::inc) ok = *a == Sort::edge && *b == Sort::vertex;
        if (f->kind == Kind::in) ok = !is_set(*a) && *b == set_of(*a);
        if (!ok)
            problems.push_back("sort mismatch at atom (" + f->args[0] + ", " + f->args[1] + ")");
        return;
    }
    }
    for (auto& k : f->kids) check(k, scope, free, problems);
}

} // namespace

std::vector<std::string> check_well_formed(const Formula& f, const Declarations& free) {
    std::vector<std::string> problems;
    check(f, {}, free, problems);
    return problems;
}

std::string range_set_name(int k1, int k2) { return "I_" + std::to_string(k1) + "_" + std::to_string(k2); }

Declarations recognition_free_variables() { return {{"horizontal", Sort::edge_set}}; }

Declarations labeled_free_variables(int K) {
    Declarations d = recognition_free_variables();
    for (int k1 = 2; k1 <= K; ++k1)
        for (int k2 = k1; k2 <= K; ++k2) d[range_set_name(k1, k2)] = Sort::edge_set;
    return d;
}

// ---------------------------------------------------------------- predicates

namespace {

const std::string kHorizontal = "horizontal";

class Emitter {
public:
    explicit Emitter(const std::vector<std::string>& reserved) : reserved_(reserved.begin(), reserved.end()) {}

    std::string fresh(const std::string& base) {
        for (;;) {
            std::string s = base + std::to_string(++next_[base]);
            if (!reserved_.count(s)) return s;
        }
    }

    // ∃e∈S: (e∼a ∧ e∼b)
    Formula adjacent(const std::string& a, const std::string& b, const std::string& S) {
        auto e = fresh("e");
        return exists(Sort::edge, {e}, S, all_of({incident(e, a), incident(e, b)}));
    }

    // ∀c,d∈X: ((adjacent(l,c,S) ∧ adjacent(l,d,S)) → c=d)
    Formula leaf(const std::string& l, const std::string& X, const std::string& S) {
        auto c = fresh("c");
        auto d = fresh("d");
        return forall(Sort::vertex, {c, d}, X, implies(all_of({adjacent(l, c, S), adjacent(l, d, S)}), equals(c, d)));
    }

    // ∀X⊂V: (∃x∈X) → ∃l∈X: leaf(l,X,S)
    Formula acyclic(const std::string& S) {
        auto X = fresh("X");
        auto x = fresh("x");
        auto l = fresh("l");
        return forall(Sort::vertex_set, {X}, "V",
                      implies(exists(Sort::vertex, {x}, X, truth()), exists(Sort::vertex, {l}, X, leaf(l, X, S))));
    }

    // ∀C⊂V: (p∈C ∧ ¬(q∈C)) → ∃h∈horizontal: ∃y,z∈V: (y∈C ∧ ¬(z∈C) ∧ h∼y ∧ h∼z)
    Formula alignedwith(const std::string& p, const std::string& q) {
        auto C = fresh("C");
        auto h = fresh("h");
        auto y = fresh("y");
        auto z = fresh("z");
        Formula crossing = exists(
            Sort::edge, {h}, kHorizontal,
            exists(Sort::vertex, {y, z}, "V",
                   all_of({member(y, C), negate(member(z, C)), incident(h, y), incident(h, z)})));
        return forall(Sort::vertex_set, {C}, "V", implies(all_of({member(p, C), negate(member(q, C))}), crossing));
    }

    Formula representative(const std::string& v, const std::string& l, const std::string& S) {
        return all_of({leaf(l, "V", S), alignedwith(v, l)});
    }

    Formula represented(const std::string& S) {
        auto v = fresh("v");
        auto l = fresh("l");
        Formula some = forall(Sort::vertex, {v}, "V", exists(Sort::vertex, {l}, "V", representative(v, l, S)));
        auto v2 = fresh("v");
        auto l1 = fresh("l");
        auto l2 = fresh("l");
        Formula unique = forall(
            Sort::vertex, {v2, l1, l2}, "V",
            implies(all_of({representative(v2, l1, S), representative(v2, l2, S)}), equals(l1, l2)));
        return all_of({some, unique});
    }

    // ∃w_1..w_{k-1}∈V: ∃e_1..e_k∈S: ¬(u=v) ∧ e_1∼u ∧ e_1∼w_1 ∧ ... ∧ e_k∼w_{k-1} ∧ e_k∼v
    Formula haspath(int k, const std::string& u, const std::string& v, const std::string& S) {
        if (k < 1) throw invalid_parameter("haspath needs k >= 1");
        std::vector<std::string> ws, es;
        for (int i = 1; i < k; ++i) ws.push_back(fresh("w"));
        for (int i = 1; i <= k; ++i) es.push_back(fresh("e"));
        std::vector<Formula> parts{negate(equals(u, v))};
        for (int i = 0; i < k; ++i) {
            parts.push_back(incident(es[i], i == 0 ? u : ws[i - 1]));
            parts.push_back(incident(es[i], i == k - 1 ? v : ws[i]));
        }
        Formula body = exists(Sort::edge, es, S, all_of(parts));
        return ws.empty() ? body : exists(Sort::vertex, ws, "V", body);
    }

    // ∃u',v'∈V ∃e∈E: (aligned(u,u') ∧ aligned(v,v') ∧ e∼u' ∧ e∼v' ∧ ¬(e∈horizontal))
    Formula levels_adjacent(const std::string& u, const std::string& v, bool incidence_first) {
        auto u2 = fresh("u");
        auto v2 = fresh("v");
        auto e = fresh("e");
        std::vector<Formula> aligned{alignedwith(u, u2), alignedwith(v, v2)};
        std::vector<Formula> inc{incident(e, u2), incident(e, v2)};
        std::vector<Formula> parts;
        if (incidence_first) {
            parts = inc;
            parts.insert(parts.end(), aligned.begin(), aligned.end());
        } else {
            parts = aligned;
            parts.insert(parts.end(), inc.begin(), inc.end());
        }
        parts.push_back(negate(member(e, kHorizontal)));
        return exists(Sort::vertex, {u2, v2}, "V", exists(Sort::edge, {e}, "E", all_of(parts)));
    }

    Formula isroot(int k, const std::string& S) {
        auto u = fresh("u");
        auto v = fresh("v");
        Formula lhs = levels_adjacent(u, v, false);
        auto x = fresh("x");
        auto y = fresh("y");
        Formula rhs = exists(Sort::vertex, {x, y}, "V",
                             all_of({representative(u, x, S), representative(v, y, S), haspath(k, x, y, S)}));
        return forall(Sort::vertex, {u, v}, "V", iff(lhs, rhs));
    }

    Formula edge(int k1, int k2, const std::string& S) {
        if (k1 < 2 || k2 < k1) throw invalid_parameter("edge predicate needs 2 <= k1 <= k2");
        auto u = fresh("u");
        auto v = fresh("v");
        auto e = fresh("e");
        Formula lhs =
            exists(Sort::edge, {e}, "E", all_of({incident(e, u), incident(e, v), member(e, range_set_name(k1, k2))}));
        auto x = fresh("x");
        auto y = fresh("y");
        Formula rhs = exists(Sort::vertex, {x, y}, "V",
                             all_of({representative(u, x, S), representative(v, y, S), haspath(k2, x, y, S),
                                     negate(haspath(k1 - 1, x, y, S))}));
        return forall(Sort::vertex, {u, v}, "V", implies(lhs, rhs));
    }

    Formula nonedge(int K, const std::string& S) {
        auto u = fresh("u");
        auto v = fresh("v");
        auto x = fresh("x");
        auto y = fresh("y");
        Formula lhs = exists(Sort::vertex, {x, y}, "V",
                             all_of({representative(u, x, S), representative(v, y, S), haspath(K, x, y, S)}));
        return forall(Sort::vertex, {u, v}, "V", implies(lhs, levels_adjacent(u, v, true)));
    }

private:
    std::set<std::string> reserved_;
    std::map<std::string, int> next_;
};

} // namespace

Formula emit_predicate(const std::string& name, const PredicateParams& p) {
    static const std::map<std::string, std::vector<std::string>> defaults{
        {"adjacent", {"a", "b", "S"}},     {"leaf", {"l", "X", "S"}},
        {"acyclic", {"S"}},                {"alignedwith", {"p", "q"}},
        {"representative", {"v", "l", "S"}}, {"represented", {"S"}},
        {"haspath", {"u", "v", "S"}},      {"isroot", {"S"}},
        {"edge", {"S"}},                   {"nonedge", {"S"}},
    };
    auto it = defaults.find(name);
    if (it == defaults.end()) throw invalid_parameter("unknown predicate " + name);
    std::vector<std::string> a = p.vars.empty() ? it->second : p.vars;
    if (a.size() != it->second.size())
        throw invalid_parameter(name + " takes " + std::to_string(it->second.size()) + " names");
    Emitter em(a);
    if (name == "adjacent") return em.adjacent(a[0], a[1], a[2]);
    if (name == "leaf") return em.leaf(a[0], a[1], a[2]);
    if (name == "acyclic") return em.acyclic(a[0]);
    if (name == "alignedwith") return em.alignedwith(a[0], a[1]);
    if (name == "representative") return em.representative(a[0], a[1], a[2]);
    if (name == "represented") return em.represented(a[0]);
    if (name == "haspath") return em.haspath(p.k, a[0], a[1], a[2]);
    if (name == "isroot") {
        if (p.k < 1) throw invalid_parameter("isroot needs k >= 1");
        return em.isroot(p.k, a[0]);
    }
    if (name == "edge") return em.edge(p.k, p.k2, a[0]);
    if (p.k < 1) throw invalid_parameter("nonedge needs K >= 1");
    return em.nonedge(p.k, a[0]);
}

Formula emit_recognition_formula(int k) {
    if (k < 2) throw invalid_parameter("k must be at least 2");
    Emitter em({"S"});
    return exists(Sort::edge_set, {"S"}, "E", all_of({em.acyclic("S"), em.represented("S"), em.isroot(k, "S")}));
}

Formula emit_labeled_formula(int K) {
    if (K < 2) throw invalid_parameter("K must be at least 2");
    Emitter em({"S"});
    std::vector<Formula> parts{em.acyclic("S"), em.represented("S")};
    for (int k1 = 2; k1 <= K; ++k1)
        for (int k2 = k1; k2 <= K; ++k2) parts.push_back(em.edge(k1, k2, "S"));
    parts.push_back(em.nonedge(K, "S"));
    return exists(Sort::edge_set, {"S"}, "E", all_of(parts));
}

// ---------------------------------------------------------------- rendering

namespace {

const char* keyword(Kind k) {
    switch (k) {
    case Kind::exists: return "exists";
    case Kind::forall: return "forall";
    case Kind::conj: return "and";
    case Kind::disj: return "or";
    case Kind::neg: return "not";
    case Kind::implies: return "implies";
    case Kind::iff: return "iff";
    case Kind::eq: return "eq";
    case Kind::inc: return "inc";
    case Kind::in: return "in";
    case Kind::truth: return "true";
    }
    return "?";
}

void sexpr(const Formula& f, int depth, std::ostringstream& out) {
    std::string pad(2 * depth, ' ');
    out << pad;
    if (f->kind == Kind::truth) {
        out << "true";
        return;
    }
    if (is_atom(f->kind)) {
        out << '(' << keyword(f->kind) << ' ' << f->args[0] << ' ' << f->args[1] << ')';
        return;
    }
    out << '(' << keyword(f->kind);
    if (is_quantifier(f->kind)) {
        out << ' ' << to_string(f->sort) << " (";
        for (size_t i = 0; i < f->vars.size(); ++i) out << (i ? " " : "") << f->vars[i];
        out << ") " << f->domain;
    }
    for (auto& k : f->kids) {
        out << '\n';
        sexpr(k, depth + 1, out);
    }
    out << ')';
}

std::string pretty(const Formula& f) {
    auto wrap = [](const Formula& k) {
        std::string s = pretty(k);
        return is_quantifier(k->kind) ? "(" + s + ")" : s;
    };
    switch (f->kind) {
    case Kind::truth: return "⊤";
    case Kind::eq: return f->args[0] + "=" + f->args[1];
    case Kind::inc: return f->args[0] + "∼" + f->args[1];
    case Kind::in: return f->args[0] + "∈" + f->args[1];
    case Kind::neg: return "¬(" + pretty(f->kids[0]) + ")";
    case Kind::implies: return "(" + wrap(f->kids[0]) + " → " + wrap(f->kids[1]) + ")";
    case Kind::iff: return "(" + wrap(f->kids[0]) + " ↔ " + wrap(f->kids[1]) + ")";
    case Kind::conj:
    case Kind::disj: {
        std::string s = "(";
        for (size_t i = 0; i < f->kids.size(); ++i) {
            if (i) s += f->kind == Kind::conj ? " ∧ " : " ∨ ";
            s += wrap(f->kids[i]);
        }
        return s + ")";
    }
    case Kind::exists:
    case Kind::forall: {
        std::string s = f->kind == Kind::exists ? "∃" : "∀";
        for (size_t i = 0; i < f->vars.size(); ++i) s += (i ? "," : "") + f->vars[i];
        s += is_set(f->sort) ? "⊂" : "∈";
        return s + f->domain + ": " + pretty(f->kids[0]);
    }
    }
    return "";
}

} // namespace

std::string render(const Formula& f, Style style) {
    if (style == Style::pretty) return pretty(f);
    std::ostringstream out;
    out << "; free:";
    for (auto& [name, s] : free_variables(f)) out << ' ' << name << ':' << to_string(s);
    out << '\n';
    sexpr(f, 0, out);
    out << '\n';
    return out.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    std::string text;
    int line;
};

std::optional<Sort> sort_named(const std::string& s) {
    for (Sort x : {Sort::vertex, Sort::edge, Sort::vertex_set, Sort::edge_set})
        if (s == to_string(x)) return x;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(const std::string& text) { lex(text); }

    ParsedFormula run() {
        ParsedFormula r;
        r.free = free_;
        if (toks_.empty()) throw parse_error(0, "no formula");
        r.formula = formula();
        if (pos_ < toks_.size()) throw parse_error(toks_[pos_].line, "trailing input '" + toks_[pos_].text + "'");
        return r;
    }

private:
    void lex(const std::string& text) {
        int line = 1;
        size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == ';') {
                size_t end = text.find('\n', i);
                if (end == std::string::npos) end = text.size();
                header(text.substr(i + 1, end - i - 1), line);
                i = end;
            } else if (c == '(' || c == ')') {
                toks_.push_back({std::string(1, c), line});
                ++i;
            } else {
                size_t j = i;
                while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
                       text[j] != ')' && text[j] != ';')
                    ++j;
                toks_.push_back({text.substr(i, j - i), line});
                i = j;
            }
        }
    }

    void header(const std::string& body, int line) {
        std::istringstream in(body);
        std::string word;
        in >> word;
        if (word != "free:") return;  // plain comment
        while (in >> word) {
            auto colon = word.find(':');
            if (colon == std::string::npos) throw parse_error(line, "free variable without sort: " + word);
            auto s = sort_named(word.substr(colon + 1));
            if (!s) throw parse_error(line, "unknown sort in " + word);
            free_[word.substr(0, colon)] = *s;
        }
    }

    const Token& next(const char* what) {
        if (pos_ >= toks_.size()) throw parse_error(toks_.back().line, std::string("unexpected end, expected ") + what);
        return toks_[pos_++];
    }

    void expect(const std::string& s) {
        const Token& t = next(s.c_str());
        if (t.text != s) throw parse_error(t.line, "expected '" + s + "', found '" + t.text + "'");
    }

    std::string name() {
        const Token& t = next("a name");
        if (t.text == "(" || t.text == ")") throw parse_error(t.line, "expected a name, found '" + t.text + "'");
        return t.text;
    }

    bool peek_close() const { return pos_ < toks_.size() && toks_[pos_].text == ")"; }

    Formula formula() {
        const Token& t = next("a formula");
        if (t.text == "true") return truth();
        if (t.text != "(") throw parse_error(t.line, "expected '(' or 'true', found '" + t.text + "'");
        const Token& head = next("a keyword");
        const std::string& kw = head.text;
        int line = head.line;
        Formula out;
        if (kw == "exists" || kw == "forall") {
            std::string sname = name();
            auto s = sort_named(sname);
            if (!s) throw parse_error(line, "unknown sort '" + sname + "'");
            expect("(");
            std::vector<std::string> vars;
            while (!peek_close()) vars.push_back(name());
            expect(")");
            if (vars.empty()) throw parse_error(line, "quantifier without variables");
            std::string domain = name();
            Formula body = formula();
            out = kw == "exists" ? exists(*s, vars, domain, body) : forall(*s, vars, domain, body);
        } else if (kw == "and" || kw == "or") {
            std::vector<Formula> kids;
            while (!peek_close()) kids.push_back(formula());
            if (kids.size() < 2) throw parse_error(line, kw + " needs at least two operands");
            out = kw == "and" ? all_of(kids) : any_of(kids);
        } else if (kw == "not") {
            out = negate(formula());
        } else if (kw == "implies" || kw == "iff") {
            Formula a = formula();
            Formula b = formula();
            out = kw == "implies" ? implies(a, b) : iff(a, b);
        } else if (kw == "eq" || kw == "inc" || kw == "in") {
            std::string a = name();
            std::string b = name();
            out = kw == "eq" ? equals(a, b) : kw == "inc" ? incident(a, b) : member(a, b);
        } else {
            throw parse_error(line, "unknown keyword '" + kw + "'");
        }
        expect(")");
        return out;
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    Declarations free_;
};

} // namespace

ParsedFormula parse(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------- witnesses

HaspathWitness extend_haspath_witness(const HaspathWitness& h, int v) {
    if (h.e.empty()) throw invalid_parameter("haspath witness needs at least one edge");
    HaspathWitness out = h;
    out.w.push_back(v);
    out.e.push_back(h.e.back());
    return out;
}

bool is_haspath_witness(const Structure& s, const HaspathWitness& h, int u, int v, uint64_t S) {
    int k = static_cast<int>(h.e.size());
    if (k < 1 || static_cast<int>(h.w.size()) != k - 1 || u == v) return false;
    auto touches = [&](int e, int x) {
        if (e < 0 || e >= static_cast<int>(s.edges.size()) || !((S >> e) & 1)) return false;
        return s.edges[e].first == x || s.edges[e].second == x;
    };
    for (int i = 0; i < k; ++i) {
        int from = i == 0 ? u : h.w[i - 1];
        int to = i == k - 1 ? v : h.w[i];
        if (!touches(h.e[i], from) || !touches(h.e[i], to)) return false;
    }
    return true;
}

Structure Structure::of_product(const ProductGraph& p) {
    Structure s;
    s.vertex_count = p.vertex_count();
    const auto& es = p.edges();
    if (es.size() > 64) throw size_limit("structure holds at most 64 edges");
    uint64_t horizontal = 0;
    std::map<std::string, uint64_t> ranges;
    int K = p.cycle_length();
    if (p.labeled())
        for (int k1 = 2; k1 <= K; ++k1)
            for (int k2 = k1; k2 <= K; ++k2) ranges[range_set_name(k1, k2)] = 0;
    for (size_t i = 0; i < es.size(); ++i) {
        s.edges.emplace_back(es[i].a, es[i].b);
        if (es[i].color == EdgeColor::horizontal) {
            horizontal |= uint64_t{1} << i;
        } else if (p.labeled()) {
            auto r = p.inherited_range(static_cast<int>(i));
            if (r) ranges[range_set_name(r->lo, r->hi)] |= uint64_t{1} << i;
        }
    }
    s.sets = ranges;
    s.sets["horizontal"] = horizontal;
    return s;
}

// ---------------------------------------------------------------- evaluation

namespace {

constexpr int kDomainV = -1;
constexpr int kDomainE = -2;
constexpr int kMaxSetDomain = 20;
constexpr size_t kMemoLimit = 1 << 22;

struct CNode {
    Kind kind;
    Sort sort;
    std::vector<int> vars;
    int domain = 0;
    std::vector<int> args;
    std::vector<int> kids;
    std::vector<int> free;  // slots read but not bound inside
    bool memo = false;
};

struct KeyHash {
    size_t operator()(const std::vector<uint64_t>& k) const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t x : k) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

class Machine {
public:
    Machine(const Structure& s, const Formula& f, const Assignment& a) : s_(s) {
        Declarations decl = free_variables(f);
        auto problems = check_well_formed(f, decl);
        if (!problems.empty()) throw invalid_parameter("formula is not well formed: " + problems.front());
        std::map<std::string, int> scope;
        for (auto& [name, sort] : decl) {
            uint64_t value = 0;
            if (auto it = a.find(name); it != a.end()) value = it->second;
            else if (auto jt = s.sets.find(name); jt != s.sets.end()) value = jt->second;
            else throw invalid_parameter("no value for free variable " + name);
            if (sort == Sort::vertex && value >= static_cast<uint64_t>(s.vertex_count))
                throw invalid_parameter("vertex value out of range for " + name);
            if (sort == Sort::edge && value >= s.edges.size())
                throw invalid_parameter("edge value out of range for " + name);
            scope[name] = static_cast<int>(env_.size());
            env_.push_back(value);
        }
        root_ = compile(f, scope);
    }

    bool run() { return eval(root_); }

private:
    int compile(const Formula& f, std::map<std::string, int> scope) {
        CNode c;
        c.kind = f->kind;
        c.sort = f->sort;
        std::set<int> bound;
        if (is_quantifier(f->kind)) {
            c.domain = f->domain == "V" ? kDomainV : f->domain == "E" ? kDomainE : scope.at(f->domain);
            for (auto& v : f->vars) {
                int slot = static_cast<int>(env_.size());
                env_.push_back(0);
                scope[v] = slot;
                c.vars.push_back(slot);
                bound.insert(slot);
            }
        }
        for (auto& a : f->args) c.args.push_back(scope.at(a));
        std::set<int> free(c.args.begin(), c.args.end());
        if (c.domain >= 0) free.insert(c.domain);
        bool nested = false;
        for (auto& k : f->kids) {
            int idx = compile(k, scope);
            c.kids.push_back(idx);
            for (int x : nodes_[idx].free)
                if (!bound.count(x)) free.insert(x);
            nested = nested || is_quantifier(nodes_[idx].kind) || nodes_[idx].memo || !nodes_[idx].kids.empty();
        }
        c.free.assign(free.begin(), free.end());
        c.memo = is_quantifier(c.kind) && nested;
        nodes_.push_back(std::move(c));
        return static_cast<int>(nodes_.size()) - 1;
    }

    bool eval(int i) {
        const CNode& c = nodes_[i];
        switch (c.kind) {
        case Kind::truth: return true;
        case Kind::eq: return env_[c.args[0]] == env_[c.args[1]];
        case Kind::inc: {
            const Edge& e = s_.edges[env_[c.args[0]]];
            int v = static_cast<int>(env_[c.args[1]]);
            return e.first == v || e.second == v;
        }
        case Kind::in: return (env_[c.args[1]] >> env_[c.args[0]]) & 1;
        case Kind::neg: return !eval(c.kids[0]);
        case Kind::conj:
            for (int k : c.kids)
                if (!eval(k)) return false;
            return true;
        case Kind::disj:
            for (int k : c.kids)
                if (eval(k)) return true;
            return false;
        case Kind::implies: return !eval(c.kids[0]) || eval(c.kids[1]);
        case Kind::iff: return eval(c.kids[0]) == eval(c.kids[1]);
        case Kind::exists:
        case Kind::forall: break;
        }
        if (!c.memo) return quantify(c, 0);
        std::vector<uint64_t> key{static_cast<uint64_t>(i)};
        for (int x : c.free) key.push_back(env_[x]);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool r = quantify(c, 0);
        if (memo_.size() >= kMemoLimit) memo_.clear();
        memo_.emplace(std::move(key), r);
        return r;
    }

    bool quantify(const CNode& c, size_t i) {
        if (i == c.vars.size()) return eval(c.kids[0]);
        bool ex = c.kind == Kind::exists;
        int slot = c.vars[i];
        auto visit = [&](uint64_t value) {
            env_[slot] = value;
            return quantify(c, i + 1);
        };
        if (is_set(c.sort)) {
            int n = c.sort == Sort::vertex_set ? s_.vertex_count : static_cast<int>(s_.edges.size());
            if (n > kMaxSetDomain) throw size_limit("set quantifier over more than 20 elements");
            uint64_t count = uint64_t{1} << n;
            for (uint64_t m = 0; m < count; ++m)
                if (visit(m) == ex) return ex;
            return !ex;
        }
        if (c.domain < 0) {
            int n = c.domain == kDomainV ? s_.vertex_count : static_cast<int>(s_.edges.size());
            for (int x = 0; x < n; ++x)
                if (visit(static_cast<uint64_t>(x)) == ex) return ex;
            return !ex;
        }
        uint64_t m = env_[c.domain];
        while (m) {
            int x = std::countr_zero(m);
            m &= m - 1;
            if (visit(static_cast<uint64_t>(x)) == ex) return ex;
        }
        return !ex;
    }

    const Structure& s_;
    std::vector<CNode> nodes_;
    std::vector<uint64_t> env_;
    int root_ = 0;
    std::unordered_map<std::vector<uint64_t>, bool, KeyHash> memo_;
};

} // namespace

bool evaluate(const Formula& f, const Structure& s, const Assignment& a) {
    if (s.vertex_count > 64 || s.edges.size() > 64) throw size_limit("structure exceeds 64 vertices or edges");
    Machine m(s, f, a);
    return m.run();
}

bool evaluate_on_product(const Formula& f, const ProductGraph& p) {
    if (static_cast<int>(p.edges().size()) > kMaxMicroEdges)
        throw size_limit("product has " + std::to_string(p.edges().size()) + " edges; the naive check stops at 20");
    return evaluate(f, Structure::of_product(p), {});
}

} // namespace leafpower::mso
