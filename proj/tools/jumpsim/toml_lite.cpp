#include "toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace jumpsim::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Strips a trailing '#' comment, respecting double-quoted strings.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool valid_bare_key(const std::string& key) {
    if (key.empty()) return false;
    for (char ch : key)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' &&
            ch != '-')
            return false;
    return true;
}

double parse_number(const std::string& text, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size())
        throw TomlError("line " + std::to_string(line) +
                        ": expected a number, got '" + text + "'");
    return v;
}

TomlValue parse_value(const std::string& raw, int line) {
    TomlValue v;
    v.line = line;
    const std::string text = trim(raw);
    if (text.empty())
        throw TomlError("line " + std::to_string(line) + ": missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            throw TomlError("line " + std::to_string(line) +
                            ": unterminated string");
        v.kind = TomlValue::Kind::string;
        v.str = text.substr(1, text.size() - 2);
        return v;
    }
    if (text == "true" || text == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.boolean = text == "true";
        return v;
    }
    if (text.front() == '[') {
        if (text.back() != ']')
            throw TomlError("line " + std::to_string(line) +
                            ": unterminated array");
        v.kind = TomlValue::Kind::array;
        const std::string body = trim(text.substr(1, text.size() - 2));
        if (!body.empty()) {
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ','))
                v.array.push_back(parse_number(trim(item), line));
        }
        return v;
    }
    v.kind = TomlValue::Kind::number;
    v.number = parse_number(text, line);
    return v;
}

}  // namespace

TomlTable TomlTable::parse(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw TomlError("line " + std::to_string(line_no) +
                                ": malformed section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (!valid_bare_key(current))
                throw TomlError("line " + std::to_string(line_no) +
                                ": invalid section name '" + current + "'");
            if (table.sections_.count(current))
                throw TomlError("line " + std::to_string(line_no) +
                                ": duplicate section [" + current + "]");
            table.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw TomlError("line " + std::to_string(line_no) +
                            ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_bare_key(key))
            throw TomlError("line " + std::to_string(line_no) +
                            ": invalid key '" + key + "'");
        if (current.empty())
            throw TomlError("line " + std::to_string(line_no) + ": key '" + key +
                            "' outside any [section]");
        auto& section = table.sections_[current];
        if (section.count(key))
            throw TomlError("line " + std::to_string(line_no) +
                            ": duplicate key '" + current + "." + key + "'");
        section[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TomlError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const TomlValue* TomlTable::find(const std::string& section,
                                 const std::string& key) const {
    auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    auto it = sec->second.find(key);
    if (it == sec->second.end()) return nullptr;
    it->second.used = true;
    return &it->second;
}

double TomlTable::number(const std::string& section,
                         const std::string& key) const {
    const TomlValue* v = find(section, key);
    if (!v)
        throw TomlError("missing required key '" + section + "." + key + "'");
    if (v->kind != TomlValue::Kind::number)
        throw TomlError("key '" + section + "." + key + "' (line " +
                        std::to_string(v->line) + ") must be a number");
    return v->number;
}

std::optional<double> TomlTable::number_opt(const std::string& section,
                                            const std::string& key) const {
    const TomlValue* v = find(section, key);
    if (!v) return std::nullopt;
    if (v->kind != TomlValue::Kind::number)
        throw TomlError("key '" + section + "." + key + "' (line " +
                        std::to_string(v->line) + ") must be a number");
    return v->number;
}

std::string TomlTable::string(const std::string& section,
                              const std::string& key) const {
    const TomlValue* v = find(section, key);
    if (!v)
        throw TomlError("missing required key '" + section + "." + key + "'");
    if (v->kind != TomlValue::Kind::string)
        throw TomlError("key '" + section + "." + key + "' (line " +
                        std::to_string(v->line) + ") must be a string");
    return v->str;
}

void TomlTable::reject_unknown_keys() const {
    std::string offenders;
    for (const auto& [section, keys] : sections_) {
        for (const auto& [key, value] : keys) {
            if (!value.used) {
                if (!offenders.empty()) offenders += ", ";
                offenders += "'" + section + "." + key + "' (line " +
                             std::to_string(value.line) + ")";
            }
        }
    }
    if (!offenders.empty())
        throw TomlError("unknown config key(s): " + offenders);
}

}  // namespace jumpsim::cli
