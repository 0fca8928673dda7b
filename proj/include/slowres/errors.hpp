#pragma once

#include <stdexcept>
#include <string>

namespace slowres {

/// Bad user input: malformed config, unknown key, missing file argument.
/// Maps to exit code 2 at the CLI; everything else maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace slowres
