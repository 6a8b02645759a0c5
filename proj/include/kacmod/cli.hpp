#pragma once

#include "kacmod/lattice_forms.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kacmod::cli {

enum class Format { Pretty, Json, Csv };

struct Config {
    int rank_cap = 6;
    int depth = 8;
    double tol = 1e-6;
    double theta_tol = 1e-10;
    int threads = 1;
    Format format = Format::Pretty;
    std::string tau, z, t;  // default sample point overrides, empty = built-in
};

// key=value lines; '#' starts a comment. Unknown keys are rejected.
Config parse_config(const std::string& text, Config base = {});
// Config file (if any), then KACMOD_THREADS.
Config load_config(const std::string& path);

cplx parse_complex(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);
std::vector<int> parse_labels(const std::string& s);

// Rounds every float to 15 significant digits so dumps are byte-stable.
nlohmann::json stable(nlohmann::json j);

// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kacmod::cli
