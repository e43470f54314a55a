#pragma once

// Subcommand dispatch for the fraclog command-line tool. Kept in a library
// so the acceptance harness can run commands in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fraclog::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// FNV-1a of a file's bytes; throws std::runtime_error if it cannot be read.
std::uint64_t fnv1a_file(const std::string& path);

/// "%.17g" in the C locale.
std::string format_number(double value);

/// args excludes the program name. Returns 0 on success, 1 on validation
/// errors and unknown commands, 2 on numerical or I/O errors and on an
/// uncertified Poisson solve.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclog::cli
