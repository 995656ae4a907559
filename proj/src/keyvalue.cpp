#include "shaclass/keyvalue.hpp"

#include "shaclass/error.hpp"

#include <sstream>

namespace shaclass {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(std::string_view text) {
    KeyValueDocument doc;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::InvalidInput, "line " + std::to_string(number) + ": expected 'key = value'");
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::InvalidInput, "line " + std::to_string(number) + ": empty key");
        if (!doc.values_.emplace(key, std::move(value)).second)
            throw Error(ErrorKind::InvalidInput, "line " + std::to_string(number) + ": repeated key '" + key + "'");
    }
    return doc;
}

std::optional<std::string> KeyValueDocument::get(const std::string& key) const {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return std::nullopt;
}

std::string KeyValueDocument::serialize() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

bool parse_bool(std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw Error(ErrorKind::InvalidInput, "expected a boolean, got '" + std::string(text) + "'");
}

}  // namespace shaclass
