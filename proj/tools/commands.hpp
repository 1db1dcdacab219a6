#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace fltkit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCrossCheck = 2, kEnvelope = 3 };

int cmd_quad(std::int64_t d, bool json, std::ostream& out, std::ostream& err);
int cmd_dio(long precision_bits, bool json, std::ostream& out, std::ostream& err);
int cmd_cubic(bool json, std::ostream& out, std::ostream& err);
int cmd_polyfam(std::optional<unsigned> n, std::optional<std::string> list, long window, bool json,
                std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace fltkit::cli
