#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal TOML reader covering what the run configs need: [section] headers,
// key = value lines with number / string / boolean / flat number-array
// values, and '#' comments. Errors carry the offending key and line number.

namespace jumpsim::cli {

struct TomlError : std::runtime_error {
    explicit TomlError(const std::string& what) : std::runtime_error(what) {}
};

struct TomlValue {
    enum class Kind { number, string, boolean, array };
    Kind kind = Kind::number;
    double number = 0.0;
    std::string str;
    bool boolean = false;
    std::vector<double> array;
    int line = 0;
    mutable bool used = false;
};

class TomlTable {
  public:
    using Section = std::map<std::string, TomlValue>;

    static TomlTable parse(const std::string& text);
    static TomlTable parse_file(const std::string& path);

    bool has_section(const std::string& name) const {
        return sections_.count(name) > 0;
    }
    const Section* section(const std::string& name) const {
        auto it = sections_.find(name);
        return it == sections_.end() ? nullptr : &it->second;
    }

    /// Fetches `section.key`, marking it consumed. Empty optional when absent.
    const TomlValue* find(const std::string& section,
                          const std::string& key) const;

    double number(const std::string& section, const std::string& key) const;
    std::optional<double> number_opt(const std::string& section,
                                     const std::string& key) const;
    std::string string(const std::string& section, const std::string& key) const;

    /// Throws TomlError naming every key that was parsed but never consumed.
    void reject_unknown_keys() const;

    const std::map<std::string, Section>& sections() const { return sections_; }

  private:
    std::map<std::string, Section> sections_;
};

}  // namespace jumpsim::cli
