#include "xsltevo/config.hpp"

#include <fstream>
#include <sstream>

#include "xsltevo/xml.hpp"  // trim

namespace xsltevo {

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
    KeyValueConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string where = origin.empty() ? std::string() : origin + ":";
    while (std::getline(in, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(where + std::to_string(lineno) + ": empty key");
        config.values[key] = value;
    }
    return config;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
}

}  // namespace xsltevo
