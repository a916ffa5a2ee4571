#pragma once

#include "stbc/error.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stbc::cli {

inline constexpr const char* kToolName = "stbc-lab";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, runtime_error = 1, usage_error = 2, property_fails = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

/// A validated invocation; options holds every option of the verb with its resolved value.
struct Command {
    std::string verb;
    std::map<std::string, std::string> options;
    std::optional<std::string> output_path;
    std::optional<std::string> help_text; ///< set when --help was requested

    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::size_t get_count(const std::string& key) const;

    /// Canonical command line that reproduces this invocation.
    std::string command_line() const;
};

/// argv excludes the program name.
Command parse(const std::vector<std::string>& argv);

int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + execute with exit-code mapping.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// "a:step:b" (inclusive), "a,b,c" or a single value.
std::vector<double> parse_grid(const std::string& text);

/// %.17g
std::string format_number(double v);

} // namespace stbc::cli
