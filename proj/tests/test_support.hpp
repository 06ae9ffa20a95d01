#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace testsupport {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/// Run the built CLI with the given argument string, capturing both streams.
inline CliResult run_cli(const std::string& args, const std::string& scratch_name = "cli") {
    const auto dir = scratch_dir(scratch_name);
    const auto out_path = dir / "stdout.txt";
    const auto err_path = dir / "stderr.txt";
    const std::string command = std::string(EPSPLANE_CLI_PATH) + " " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int status = std::system(command.c_str());
    CliResult result;
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

} // namespace testsupport
