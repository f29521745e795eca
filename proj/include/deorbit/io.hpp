#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace deorbit {

/// Write a file atomically: stage to <path>.tmp in the same directory, then
/// rename over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out)
            throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace deorbit
