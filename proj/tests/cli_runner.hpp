#pragma once

// Runs the command-line tool in a child shell and captures stdout.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace cli_runner {

struct Result {
    int exit_code = -1;
    std::string out;
};

inline std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        std::random_device rd;
        auto p = std::filesystem::temp_directory_path() / ("schurtele-cli-" + std::to_string(rd()));
        std::filesystem::create_directories(p);
        return p;
    }();
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// `env` is prepended verbatim (e.g. "FOO=bar ").
inline Result run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const auto out = scratch_dir() / ("stdout-" + std::to_string(counter++));
    const std::string cmd = env + "\"" SCHURTELE_CLI_PATH "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

}  // namespace cli_runner
