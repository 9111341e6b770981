#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace workwell::cli {

// Documented exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigInvalid = 2;
inline constexpr int kExitParseError = 3;
inline constexpr int kExitIoError = 4;
inline constexpr int kExitInternalError = 5;

int cmd_validate(const std::string& scenario_path);
int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, bool quiet);
int cmd_report(const std::string& artifacts_dir, const std::string& out_dir, bool quiet);
int cmd_plot(const std::string& artifacts_dir, const std::string& out_dir, bool quiet);

} // namespace workwell::cli
