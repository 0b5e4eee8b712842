#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testutil {

inline std::filesystem::path golden_dir() {
    if (const char* env = std::getenv("LAYOUTLAB_TEST_DATA")) return env;
    return std::filesystem::path(__FILE__).parent_path() / "golden";
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test data missing: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// Scratch directory removed at scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::mt19937_64 rng(std::random_device{}());
        dir_ = std::filesystem::temp_directory_path() /
               ("layoutlab_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

// Blanks the values of volatile report.json fields (timing, the derived
// speedups, observed worker counts) so deterministic content can be
// compared byte-for-byte.
inline std::string mask_volatile_fields(const std::string& json_text) {
    std::istringstream in(json_text);
    std::ostringstream out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!first) out << '\n';
        first = false;
        const auto masked = [&](const std::string& key) {
            const auto pos = line.find("\"" + key + "\": ");
            if (pos == std::string::npos) return false;
            const std::size_t value_at = pos + key.size() + 4;
            const bool trailing_comma = !line.empty() && line.back() == ',';
            out << line.substr(0, value_at) << "MASKED" << (trailing_comma ? "," : "");
            return true;
        };
        if (masked("median") || masked("min") || masked("max") ||
            masked("observed_worker_count") || masked("time_aos_over_soa_st") ||
            masked("time_aos_over_soa_mt") || masked("time_mt_over_st_aos") ||
            masked("time_mt_over_st_soa")) {
            continue;
        }
        out << line;
    }
    return out.str();
}

}  // namespace testutil
