#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace leafpower::cli {

enum ExitCode { kYes = 0, kNo = 1, kUsage = 2, kResourceCap = 3 };

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    int k = 0;
    int k2 = 0;
    // strategy flags
    bool labeled = false;
    bool pretty = false;
    bool exact = false;
    bool reduce_twins = true;
    std::string method = "brute";
    std::string family;  // generate: random, bench: caterpillar
    std::string predicate;
    std::vector<std::string> vars;
    // resource caps
    std::size_t max_pictures = 4'000'000;
    double max_seconds = 0;
    int budget = 0;
    // outputs
    std::string output;
    std::string witness;
    std::string newick;
    std::string trace;
    // workload
    std::vector<int> sizes;
    int leaves = 0;
    int repeat = 1;
    int lift = 0;
    uint64_t seed = 0;
    int threads = 1;
};

// argv without the program name. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace leafpower::cli
