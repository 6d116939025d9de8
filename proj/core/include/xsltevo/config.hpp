#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace xsltevo {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat `key = value` text, '#' comments, dotted keys.
struct KeyValueConfig {
    std::map<std::string, std::string> values;

    static KeyValueConfig from_string(const std::string& text, const std::string& origin = "");
    static KeyValueConfig from_file(const std::string& path);

    std::optional<std::string> get(const std::string& key) const;
};

}  // namespace xsltevo
