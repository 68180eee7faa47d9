#include "cli_support.hpp"

#include "lfmax/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace lfmax::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot write " + path.string());
    f << data;
    if (!f) throw ResourceError("write failed for " + path.string());
}

}  // namespace

void Config::declare(const std::string& key, const std::string& def) { entries_[key] = {def, "default"}; }

void Config::set(const std::string& key, const std::string& value, const std::string& origin) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("unknown key '" + key + "'");
    it->second = {value, origin};
}

const std::string& Config::str(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("internal: undeclared key '" + key + "'");
    return it->second.value;
}

double Config::num(const std::string& key) const { return parse_double(key, str(key)); }

std::int64_t Config::integer(const std::string& key) const {
    const std::string& v = str(key);
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec == std::errc() && p == v.data() + v.size()) return out;
    // allow 1e6 style when it is an exact integer
    double d = parse_double(key, v);
    if (std::floor(d) != d || std::abs(d) > 9e15) throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    return static_cast<std::int64_t>(d);
}

bool Config::flag(const std::string& key) const {
    const std::string& v = str(key);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
    throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> Config::list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::string Config::canonical() const {
    std::string s;
    for (const auto& [k, e] : entries_) s += k + "=" + e.value + "\n";
    return s;
}

void load_config_file(const std::string& path, const std::string& active, const KeyTable& table, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        auto dot = key.find('.');
        if (dot == std::string::npos) throw ConfigError(where + ": key '" + key + "' needs a section prefix (e.g. tail.N)");
        std::string section = key.substr(0, dot), name = key.substr(dot + 1);
        auto sec = table.find(section);
        if (sec == table.end()) throw ConfigError(where + ": unknown section in key '" + key + "'");
        if (std::find(sec->second.begin(), sec->second.end(), name) == sec->second.end())
            throw ConfigError(where + ": unknown key '" + key + "'");
        if (section == active || section == "global") cfg.set(name, value, "file:" + std::to_string(lineno));
    }
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) : path_(path) {
    buf_ = "# schema=1\n";
    for (std::size_t i = 0; i < columns.size(); ++i) buf_ += (i ? "," : "") + columns[i];
    buf_ += "\n";
}

CsvWriter& CsvWriter::cell(double v) { return cell(fmt(v)); }
CsvWriter& CsvWriter::cell(std::int64_t v) { return cell(fmt(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
    if (!first_) buf_ += ",";
    buf_ += v;
    first_ = false;
    return *this;
}

void CsvWriter::end_row() {
    buf_ += "\n";
    first_ = true;
}

void CsvWriter::close() { write_file(path_, buf_); }

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series) {
    constexpr double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    double pad = 0.05 * (y1 - y0);
    y0 -= pad, y1 += pad;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
    auto r2 = [](double v) { return fmt(std::round(v * 100.0) / 100.0); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    s += "<line x1=\"" + r2(ml) + "\" y1=\"" + r2(H - mb) + "\" x2=\"" + r2(W - mr) + "\" y2=\"" + r2(H - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + r2(ml) + "\" y1=\"" + r2(mt) + "\" x2=\"" + r2(ml) + "\" y2=\"" + r2(H - mb) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.4g", xv);
        std::snprintf(by, sizeof by, "%.4g", yv);
        s += "<text x=\"" + r2(px(xv)) + "\" y=\"" + r2(H - mb + 16) + "\" text-anchor=\"middle\">" + bx + "</text>\n";
        s += "<text x=\"" + r2(ml - 6) + "\" y=\"" + r2(py(yv) + 4) + "\" text-anchor=\"end\">" + by + "</text>\n";
    }
    s += "<text x=\"" + r2((ml + W - mr) / 2) + "\" y=\"" + r2(H - 10) + "\" text-anchor=\"middle\">" + xlabel + "</text>\n";
    s += "<text x=\"16\" y=\"" + r2((mt + H - mb) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         r2((mt + H - mb) / 2) + ")\">" + ylabel + "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& sr = series[k];
        const char* col = colors[k % 6];
        if (sr.line) {
            s += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (auto [x, y] : sr.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                s += (first ? "" : " ") + r2(px(x)) + "," + r2(py(y));
                first = false;
            }
            s += "\"/>\n";
        } else {
            for (auto [x, y] : sr.points)
                if (std::isfinite(x) && std::isfinite(y))
                    s += "<circle cx=\"" + r2(px(x)) + "\" cy=\"" + r2(py(y)) + "\" r=\"3\" fill=\"" + col + "\"/>\n";
        }
        double ly = mt + 14 + 16 * static_cast<double>(k);
        s += "<rect x=\"" + r2(W - mr - 170) + "\" y=\"" + r2(ly - 9) + "\" width=\"10\" height=\"10\" fill=\"" + col + "\"/>\n";
        s += "<text x=\"" + r2(W - mr - 155) + "\" y=\"" + r2(ly) + "\">" + sr.label + "</text>\n";
    }
    s += "</svg>\n";
    write_file(path, s);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace lfmax::cli
