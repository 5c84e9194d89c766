#pragma once

// Artifact writers: CSV with 17-significant-digit floats and a config-hash
// header comment, plus the run-summary JSON.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "agsim/errors.hpp"

namespace agsim {

/// Locale-independent shortest-17-digit formatting.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, std::uint64_t config_hash,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

private:
    std::ofstream out_;
    std::size_t columns_;
};

void write_text_file(const std::string& path, const std::string& text);

} // namespace agsim
