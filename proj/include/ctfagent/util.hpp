#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ctfagent {

// Milliseconds since the Unix epoch (system clock).
long long now_ms();

// Monotonic milliseconds, for measuring durations.
long long steady_ms();

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// First whitespace-delimited token, empty if none.
std::string head_token(std::string_view s);

bool is_hex_lower(std::string_view s);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Non-empty lines of a newline-delimited file.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Shortest round-trip decimal form, "1.0" not "1".
std::string format_param(double v);

}  // namespace ctfagent
