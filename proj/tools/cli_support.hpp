#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lfmax::cli {

// key -> (value, origin) where origin is "default", "file:<line>" or "flag"
class Config {
public:
    struct Entry {
        std::string value;
        std::string origin;
    };

    void declare(const std::string& key, const std::string& def);
    bool known(const std::string& key) const { return entries_.count(key) != 0; }
    void set(const std::string& key, const std::string& value, const std::string& origin);

    const std::string& str(const std::string& key) const;
    double num(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;
    bool empty(const std::string& key) const { return str(key).empty(); }

    // sorted "key=value" lines, the thing the manifest hash covers
    std::string canonical() const;
    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

// Parses flat key=value text. Keys look like section.key; `sections` lists
// every valid section and `declared` tells whether a full key exists.
// Only keys of section `active` (and "global") are stored into cfg; keys of
// other known sections are checked for existence and skipped.
using KeyTable = std::map<std::string, std::vector<std::string>>;
void load_config_file(const std::string& path, const std::string& active, const KeyTable& table, Config& cfg);

std::string fmt(double v);  // shortest round-trip, locale independent
std::string fmt(std::int64_t v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    CsvWriter& cell(double v);
    CsvWriter& cell(std::int64_t v);
    CsvWriter& cell(const std::string& v);
    void end_row();
    void close();

private:
    std::filesystem::path path_;
    std::string buf_;
    bool first_ = true;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool line = true;  // false: scatter
};

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace lfmax::cli
