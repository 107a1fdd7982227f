#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbcdeploy::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 invariant/bound violation, 2 usage error,
// 3 resource guard (instance too large for the oracle).
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;

/// Full CLI entry point; out/err are stdout/stderr in main().
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,2,5..8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Inline comma list ("3,1,4" or "") or a file path with one id per line.
std::vector<std::int32_t> parse_node_set(const std::string& text);

} // namespace gbcdeploy::cli
