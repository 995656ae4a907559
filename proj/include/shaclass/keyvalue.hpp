#pragma once

// Flat "key = value" documents with '#' comments.

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace shaclass {

class KeyValueDocument {
public:
    /// Throws InvalidInput on a malformed line or a repeated key.
    static KeyValueDocument parse(std::string_view text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    const std::map<std::string, std::string>& values() const { return values_; }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    /// Keys in sorted order, one "key = value" per line.
    std::string serialize() const;

private:
    std::map<std::string, std::string> values_;
};

/// Parses "true"/"false"/"1"/"0"/"yes"/"no"; throws InvalidInput otherwise.
bool parse_bool(std::string_view text);

}  // namespace shaclass
