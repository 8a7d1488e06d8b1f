#ifndef TABLESENSE_TESTS_SUPPORT_HPP
#define TABLESENSE_TESTS_SUPPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

// Paths are injected by the build so the tests run from any directory.
#ifndef TS_FIXTURE_DIR
#error "TS_FIXTURE_DIR must be defined by the build"
#endif
#ifndef TS_DATA_DIR
#error "TS_DATA_DIR must be defined by the build"
#endif
#ifndef TS_CLI_PATH
#error "TS_CLI_PATH must be defined by the build"
#endif

namespace testsupport {

inline std::filesystem::path fixture_dir() { return TS_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return TS_DATA_DIR; }
inline std::filesystem::path cli_path() { return TS_CLI_PATH; }

inline std::string fixture(const std::string& name) {
    return (fixture_dir() / name).string();
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

//! Fresh directory under the system temp root; removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto candidate = base / ("tablesense-test-" + std::to_string(rd()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& name = {}) const {
        return name.empty() ? path_.string() : (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string shell_quote(const std::string& s) {
    std::string quoted = "'";
    for (char c : s) {
        if (c == '\'') quoted += "'\\''";
        else quoted += c;
    }
    quoted += "'";
    return quoted;
}

/*!
 * Runs the CLI with the given arguments, capturing exit code, stdout and
 * stderr separately. `env` entries are KEY=VALUE prefixes for the command.
 */
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::vector<std::string>& env = {}) {
    TempDir capture;
    auto out_path = capture.str("out");
    auto err_path = capture.str("err");

    std::string cmd = "env";
    for (const auto& e : env) cmd += " " + shell_quote(e);
    cmd += " " + shell_quote(cli_path().string());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " > " + shell_quote(out_path) + " 2> " + shell_quote(err_path);

    int status = std::system(cmd.c_str());

    CliResult result;
    if (status == -1) throw std::runtime_error("failed to launch: " + cmd);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

} // namespace testsupport

#endif
