// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include "kacmod/cli.hpp"
#include "kacmod/suite.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
    kacmod::SuiteOptions opt;
    opt.threads = kacmod::cli::load_config("").threads;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    bool all = true;
    for (const auto& r : kacmod::run_suite(opt, ids)) {
        std::printf("criterion %2d: %s  %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        if (!r.pass) std::cout << kacmod::cli::stable(r.details).dump(2) << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
