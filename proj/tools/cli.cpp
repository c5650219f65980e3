#include "leafpower/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "leafpower/dp.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/io.hpp"
#include "leafpower/mso.hpp"
#include "leafpower/product.hpp"
#include "leafpower/reference.hpp"
#include "leafpower/treedecomp.hpp"

namespace leafpower::cli {

namespace {

struct Io {
    std::ostream& out;
    std::ostream& err;
};

Limits limits_of(const RunConfig& c) {
    Limits l;
    l.max_pictures_per_bag = c.max_pictures;
    l.max_seconds = c.max_seconds;
    l.reduce_twins = c.reduce_twins;
    l.trace_path = c.trace;
    return l;
}

GraphFile load(const std::string& path) {
    try {
        return read_graph_file(path);
    } catch (const invalid_input& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

void print_stats(const Stats& s, std::ostream& out) {
    out << "width " << s.width << " bags " << s.bags << " pictures_max " << s.pictures_max << " millis " << s.millis
        << '\n';
}

int cmd_recognize(const RunConfig& c, Io io) {
    GraphFile gf = load(c.inputs.at(0));
    RecognitionResult r;
    bool labeled = c.command == "recognize-labeled";
    if (labeled) {
        if (!gf.labeled()) throw invalid_input(c.inputs[0] + ": recognize-labeled needs ranges on every edge");
        r = recognize_labeled(gf.as_labeled(c.k), c.k, limits_of(c));
    } else {
        if (gf.labeled()) throw invalid_input(c.inputs[0] + ": ranges present; use recognize-labeled");
        r = recognize(gf.graph, c.k, limits_of(c));
    }
    io.out << (r.yes ? "yes" : "no") << '\n';
    print_stats(r.stats, io.out);
    if (r.yes) {
        if (!c.witness.empty()) write_text_file(c.witness, write_witness(*r.witness, gf.graph));
        if (!c.newick.empty()) write_text_file(c.newick, write_newick(*r.witness, gf.graph));
    }
    return r.yes ? kYes : kNo;
}

int cmd_verify(const RunConfig& c, Io io) {
    GraphFile gf = load(c.inputs.at(0));
    LeafRootTree t = parse_witness(read_text_file(c.inputs.at(1)), gf.graph);
    Verdict v = gf.labeled() ? verify_labeled_leaf_root(gf.as_labeled(c.k), t, c.k)
                             : verify_leaf_root(gf.graph, t, c.k);
    if (v.ok()) {
        io.out << "ok\n";
        return kYes;
    }
    io.out << "invalid\n" << v.summary() << '\n';
    return kNo;
}

int cmd_oracle(const RunConfig& c, Io io) {
    GraphFile gf = load(c.inputs.at(0));
    int n = gf.graph.vertex_count();
    if (c.method == "k2" || c.method == "k3") {
        if (gf.labeled()) throw invalid_input("the closed-form tests take unlabeled graphs");
        bool yes = c.method == "k2" ? reference::recognize_k2(gf.graph) : reference::recognize_k3(gf.graph);
        io.out << (yes ? "yes" : "no") << '\n';
        return yes ? kYes : kNo;
    }
    if (c.method != "brute") throw invalid_parameter("unknown method " + c.method);
    int budget = c.budget > 0 ? c.budget : std::min(n * c.k, 18);
    reference::BruteResult r = gf.labeled() ? reference::brute_force_recognize_labeled(gf.as_labeled(c.k), c.k, budget)
                                            : reference::brute_force_recognize(gf.graph, c.k, budget);
    io.out << reference::to_string(r.answer) << '\n';
    if (r.witness && !c.witness.empty()) write_text_file(c.witness, write_witness(*r.witness, gf.graph));
    if (r.answer == reference::Answer::yes) return kYes;
    return r.answer == reference::Answer::no ? kNo : kResourceCap;
}

int cmd_generate(const RunConfig& c, Io io) {
    reference::InstanceBundle b;
    if (c.family == "caterpillar") {
        b = reference::caterpillar_instance(c.leaves, c.seed);
    } else if (c.family == "random") {
        b = reference::random_leaf_power_instance(c.leaves, c.k, c.seed, c.labeled);
    } else {
        throw invalid_parameter("unknown family " + c.family);
    }
    reference::write_bundle(c.output, b);
    io.out << "n " << b.graph.vertex_count() << " m " << b.graph.edge_count() << " k " << b.k << " tree_nodes "
           << b.witness.node_count() << '\n';
    return kYes;
}

int cmd_product(const RunConfig& c, Io io) {
    GraphFile gf = load(c.inputs.at(0));
    ProductGraph p = gf.labeled() ? ProductGraph(gf.as_labeled(c.k), c.k) : ProductGraph(gf.graph, c.k);
    io.out << "vertices " << p.vertex_count() << " edges " << p.edges().size() << " horizontal "
           << p.count(EdgeColor::horizontal) << " vertical " << p.count(EdgeColor::vertical) << " diagonal "
           << p.count(EdgeColor::diagonal) << '\n';
    if (!c.output.empty()) {
        std::ostringstream s;
        s << "c product with C_" << c.k << ", vertex (v, r) is " << c.k << "*v + r + 1\n";
        for (auto& e : p.edges()) s << "c color " << e.a + 1 << ' ' << e.b + 1 << ' ' << to_string(e.color) << '\n';
        s << write_graph_file(p.as_graph());
        write_text_file(c.output, s.str());
    }
    return kYes;
}

int cmd_decompose(const RunConfig& c, Io io) {
    GraphFile gf = load(c.inputs.at(0));
    TreeDecomposition td = decompose(gf.graph, c.exact ? DecomposeStrategy::exact_small : DecomposeStrategy::min_fill);
    io.out << "width " << td.width() << " bags " << td.bag_count() << '\n';
    if (c.lift > 0) {
        MixedDecomposition mixed = lift_to_mixed(make_nice(td), c.lift);
        TreeDecomposition pd = mixed.product_decomposition();
        ProductGraph p(gf.graph, c.lift);
        Verdict v = validate_decomposition(p.as_graph(), pd);
        io.out << "lifted_width " << mixed.width() << " bound " << c.lift * (td.width() + 1) - 1 << " valid "
               << (v.ok() ? "yes" : "no") << '\n';
        if (!c.output.empty()) write_text_file(c.output, write_td(pd, p.vertex_count()));
        return v.ok() ? kYes : kNo;
    }
    if (!c.output.empty()) write_text_file(c.output, write_td(td, gf.graph.vertex_count()));
    return kYes;
}

int cmd_emit_mso(const RunConfig& c, Io io) {
    mso::Formula f;
    if (!c.predicate.empty()) {
        f = mso::emit_predicate(c.predicate, {c.vars, c.k, c.k2});
    } else {
        f = c.labeled ? mso::emit_labeled_formula(c.k) : mso::emit_recognition_formula(c.k);
    }
    std::string text = mso::render(f, c.pretty ? mso::Style::pretty : mso::Style::sexpr);
    if (c.pretty) text += '\n';
    if (c.output.empty()) io.out << text;
    else write_text_file(c.output, text);
    return kYes;
}

struct BenchRow {
    int n = 0;
    long m = 0;
    int w = 0;
    int k = 0;
    std::size_t pictures_max = 0;
    double millis = 0;
    bool yes = false;
};

int cmd_bench(const RunConfig& c, Io io) {
    if (c.sizes.empty()) throw invalid_parameter("bench needs --sizes");
    if (c.family != "caterpillar" && c.family != "random") throw invalid_parameter("unknown family " + c.family);
    std::vector<BenchRow> rows(c.sizes.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (size_t i; (i = next++) < rows.size();) {
            try {
                reference::InstanceBundle b = c.family == "caterpillar"
                                                  ? reference::caterpillar_instance(c.sizes[i], c.seed)
                                                  : reference::random_leaf_power_instance(c.sizes[i], c.k, c.seed);
                BenchRow row;
                row.n = b.graph.vertex_count();
                row.m = b.graph.edge_count();
                row.k = b.k;
                for (int r = 0; r < std::max(1, c.repeat); ++r) {
                    auto t0 = std::chrono::steady_clock::now();
                    RecognitionResult res = recognize(b.graph, b.k, limits_of(c));
                    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                    row.millis = r == 0 ? ms : std::min(row.millis, ms);
                    row.w = res.stats.width;
                    row.pictures_max = res.stats.pictures_max;
                    row.yes = res.yes;
                }
                rows[i] = row;
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, c.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::ostringstream s;
    s << "n\tm\tw\tk\tpictures_max\tmillis\n";
    for (auto& r : rows) s << r.n << '\t' << r.m << '\t' << r.w << '\t' << r.k << '\t' << r.pictures_max << '\t' << r.millis << '\n';
    if (c.output.empty()) io.out << s.str();
    else write_text_file(c.output, s.str());
    bool all_yes = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.yes; });
    if (!all_yes) io.err << "bench: some generated instance was rejected\n";
    return all_yes ? kYes : kNo;
}

int dispatch(const RunConfig& c, Io io) {
    if (c.command == "recognize" || c.command == "recognize-labeled") return cmd_recognize(c, io);
    if (c.command == "verify") return cmd_verify(c, io);
    if (c.command == "oracle") return cmd_oracle(c, io);
    if (c.command == "generate") return cmd_generate(c, io);
    if (c.command == "product") return cmd_product(c, io);
    if (c.command == "decompose") return cmd_decompose(c, io);
    if (c.command == "emit-mso") return cmd_emit_mso(c, io);
    return cmd_bench(c, io);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Recognize k-leaf powers and labeled K-leaf powers", "leafpower"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Help for every command");
    app.add_option("--seed", c.seed, "Seed for all randomness")->default_val(0);
    app.add_option("--threads", c.threads, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);

    auto add_k = [&](CLI::App* s, const char* name, bool required) {
        auto* o = s->add_option(name, c.k, "Distance bound")->check(CLI::Range(1, 1000));
        if (required) o->required();
    };
    auto add_caps = [&](CLI::App* s) {
        s->add_option("--max-pictures", c.max_pictures, "Picture cap per bag");
        s->add_option("--max-seconds", c.max_seconds, "Time cap, 0 for none");
        s->add_flag("!--no-twins", c.reduce_twins, "Run the DP without collapsing true twins");
        s->add_option("--trace", c.trace, "Per-bag TSV trace");
    };

    auto* rec = app.add_subcommand("recognize", "Decide whether a graph is a k-leaf power");
    add_k(rec, "-k", true);
    rec->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    rec->add_option("--witness", c.witness, "Write the leaf root here");
    rec->add_option("--newick", c.newick, "Write the leaf root as Newick");
    add_caps(rec);

    auto* recl = app.add_subcommand("recognize-labeled", "Decide whether a labeled graph is a K-leaf power");
    add_k(recl, "-K,-k", true);
    recl->add_option("graph", c.inputs, "Labeled graph file")->required()->expected(1);
    recl->add_option("--witness", c.witness, "Write the leaf root here");
    recl->add_option("--newick", c.newick, "Write the leaf root as Newick");
    add_caps(recl);

    auto* ver = app.add_subcommand("verify", "Check a leaf root against a graph");
    add_k(ver, "-k,-K", true);
    ver->add_option("files", c.inputs, "Graph file and witness file")->required()->expected(2);

    auto* ora = app.add_subcommand("oracle", "Answer with a slow independent method");
    add_k(ora, "-k,-K", true);
    ora->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    ora->add_option("--method", c.method, "brute, k2 or k3")->check(CLI::IsMember({"brute", "k2", "k3"}));
    ora->add_option("--budget", c.budget, "Tree vertex budget for brute force (at most 18)");
    ora->add_option("--witness", c.witness, "Write the tree found");

    auto* gen = app.add_subcommand("generate", "Write a generated instance directory");
    gen->add_option("--family", c.family, "random or caterpillar")->check(CLI::IsMember({"random", "caterpillar"}));
    gen->add_option("--leaves,-n", c.leaves, "Leaves in the generated tree")->required()->check(CLI::PositiveNumber);
    add_k(gen, "-k", false);
    gen->add_flag("--labeled", c.labeled, "Attach exact distance ranges");
    gen->add_option("-o,--output", c.output, "Output directory")->required();

    auto* prod = app.add_subcommand("product", "Build the strong product with C_k");
    add_k(prod, "-k", true);
    prod->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    prod->add_option("-o,--output", c.output, "Write the product graph");

    auto* dec = app.add_subcommand("decompose", "Tree decomposition of the input graph");
    dec->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    dec->add_flag("--exact", c.exact, "Exact treewidth (at most 12 vertices)");
    dec->add_option("--lift", c.lift, "Lift to the product with C_k and validate");
    dec->add_option("-o,--output", c.output, "Write a .td file");

    auto* mso = app.add_subcommand("emit-mso", "Write the MSO2 formula");
    add_k(mso, "-k,-K", true);
    mso->add_flag("--labeled", c.labeled, "Formula for labeled K-leaf powers");
    mso->add_flag("--pretty", c.pretty, "Mathematical notation instead of s-expressions");
    mso->add_option("--predicate", c.predicate, "Emit a single predicate");
    mso->add_option("--k2", c.k2, "Upper range bound for the edge predicate");
    mso->add_option("--vars", c.vars, "Argument names for --predicate")->delimiter(',');
    mso->add_option("-o,--output", c.output, "Output file");

    auto* bench = app.add_subcommand("bench", "Time recognition on a generated family");
    bench->add_option("--family", c.family, "caterpillar or random")->check(CLI::IsMember({"random", "caterpillar"}));
    bench->add_option("--sizes", c.sizes, "Leaf counts")->delimiter(',')->required();
    add_k(bench, "-k", false);
    bench->add_option("--repeat", c.repeat, "Keep the fastest of this many runs");
    bench->add_option("-o,--output", c.output, "TSV output");
    add_caps(bench);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kYes : kUsage;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();
    if (c.k == 0 && (c.command == "generate" || c.command == "bench")) c.k = 4;
    if (c.family.empty()) c.family = c.command == "bench" ? "caterpillar" : "random";
    bool needs_k = c.command != "emit-mso" && c.command != "decompose";
    if (needs_k && c.k < 2) {
        err << "k must be at least 2\n";
        return kUsage;
    }

    try {
        return dispatch(c, {out, err});
    } catch (const resource_cap& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const size_limit& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace leafpower::cli
