#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "leafpower/cli.hpp"
#include "leafpower/io.hpp"
#include "leafpower/mso.hpp"

using namespace leafpower;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() / ("leafpower_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        write_text_file(path("p3.gr"), "p lp 3 2\ne 1 2\ne 2 3\n");
        write_text_file(path("c4.gr"), "p lp 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
        write_text_file(path("loop.gr"), "p lp 2 1\ne 1 1\n");
        write_text_file(path("lab.gr"), "p lp 3 2\ne 1 2 2 3\ne 2 3 2 3\n");
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    std::filesystem::path dir;
};

} // namespace

TEST_F(Cli, RecognizeWritesVerifiableWitness) {
    auto r = call({"recognize", "-k", "3", path("p3.gr"), "--witness", path("w.tree"), "--newick", path("w.nwk")});
    EXPECT_EQ(r.code, cli::kYes);
    EXPECT_EQ(r.out.substr(0, 4), "yes\n");
    auto v = call({"verify", "-k", "3", path("p3.gr"), path("w.tree")});
    EXPECT_EQ(v.code, cli::kYes) << v.out;
    std::string nwk = read_text_file(path("w.nwk"));
    EXPECT_EQ(nwk.substr(nwk.size() - 2), ";\n");
    // too small a bound for this tree
    EXPECT_EQ(call({"verify", "-k", "2", path("p3.gr"), path("w.tree")}).code, cli::kNo);
}

TEST_F(Cli, RejectsCycle) {
    EXPECT_EQ(call({"recognize", "-k", "4", path("c4.gr")}).code, cli::kNo);
    EXPECT_EQ(call({"oracle", "-k", "4", path("c4.gr"), "--budget", "16"}).code, cli::kNo);
    EXPECT_EQ(call({"oracle", "-k", "3", path("c4.gr"), "--method", "k3"}).code, cli::kNo);
    EXPECT_EQ(call({"oracle", "-k", "4", path("c4.gr"), "--budget", "8"}).code, cli::kResourceCap);
}

TEST_F(Cli, InputErrorsCarryLines) {
    auto r = call({"recognize", "-k", "3", path("loop.gr")});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
    EXPECT_EQ(call({"recognize", "-k", "3", path("missing.gr")}).code, cli::kUsage);
    EXPECT_EQ(call({"recognize", path("p3.gr")}).code, cli::kUsage);
    EXPECT_EQ(call({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(call({}).code, cli::kUsage);
    EXPECT_EQ(call({"--help"}).code, cli::kYes);
}

TEST_F(Cli, LabeledCommands) {
    auto r = call({"recognize-labeled", "-K", "3", path("lab.gr"), "--witness", path("lw.tree")});
    EXPECT_EQ(r.code, cli::kYes);
    EXPECT_EQ(call({"verify", "-K", "3", path("lab.gr"), path("lw.tree")}).code, cli::kYes);
    EXPECT_EQ(call({"recognize-labeled", "-K", "4", path("lab.gr")}).code, cli::kNo);
    EXPECT_EQ(call({"recognize-labeled", "-K", "3", path("p3.gr")}).code, cli::kUsage);
    EXPECT_EQ(call({"recognize", "-k", "3", path("lab.gr")}).code, cli::kUsage);
}

TEST_F(Cli, ResourceCap) {
    auto r = call({"generate", "--leaves", "8", "-k", "5", "--seed", "17", "-o", path("gen")});
    ASSERT_EQ(r.code, cli::kYes);
    auto c = call({"recognize", "-k", "5", path("gen/graph.gr"), "--max-pictures", "1", "--no-twins"});
    EXPECT_EQ(c.code, cli::kResourceCap);
}

TEST_F(Cli, GeneratedBundleVerifies) {
    ASSERT_EQ(call({"generate", "--leaves", "6", "-k", "4", "--seed", "3", "-o", path("b")}).code, cli::kYes);
    EXPECT_EQ(call({"verify", "-k", "4", path("b/graph.gr"), path("b/witness.tree")}).code, cli::kYes);
    EXPECT_EQ(call({"recognize", "-k", "4", path("b/graph.gr")}).code, cli::kYes);
    ASSERT_EQ(call({"generate", "--labeled", "--leaves", "5", "-k", "4", "-o", path("lb")}).code, cli::kYes);
    EXPECT_EQ(call({"recognize-labeled", "-K", "4", path("lb/graph.gr")}).code, cli::kYes);
}

TEST_F(Cli, EmitMsoIsParseable) {
    ASSERT_EQ(call({"emit-mso", "-k", "3", "-o", path("f.mso")}).code, cli::kYes);
    auto parsed = mso::parse(read_text_file(path("f.mso")));
    EXPECT_TRUE(mso::same_structure(parsed.formula, mso::emit_recognition_formula(3)));
    auto pretty = call({"emit-mso", "-k", "2", "--predicate", "haspath", "--pretty"});
    EXPECT_NE(pretty.out.find("∃w1∈V"), std::string::npos);
    auto labeled = call({"emit-mso", "-K", "3", "--labeled"});
    EXPECT_NE(labeled.out.find("I_2_3:eset"), std::string::npos);
    EXPECT_EQ(call({"emit-mso", "-k", "1"}).code, cli::kUsage);
}

TEST_F(Cli, ProductAndDecompose) {
    auto p = call({"product", "-k", "3", path("p3.gr"), "-o", path("prod.gr")});
    EXPECT_EQ(p.code, cli::kYes);
    EXPECT_NE(p.out.find("vertices 9 edges 27"), std::string::npos);
    EXPECT_EQ(parse_graph_file(read_text_file(path("prod.gr"))).graph.edge_count(), 27);
    auto d = call({"decompose", path("c4.gr"), "--lift", "3", "-o", path("c4.td")});
    EXPECT_EQ(d.code, cli::kYes);
    EXPECT_NE(d.out.find("lifted_width 8 bound 8 valid yes"), std::string::npos) << d.out;
}

TEST_F(Cli, BenchTable) {
    auto b = call({"bench", "--sizes", "20,40", "--threads", "2", "-o", path("b.tsv")});
    EXPECT_EQ(b.code, cli::kYes);
    std::istringstream in(read_text_file(path("b.tsv")));
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "n\tm\tw\tk\tpictures_max\tmillis");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 2);
}
