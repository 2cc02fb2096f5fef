#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadprop/common.hpp"

namespace quadprop {

/// Shortest round-trip decimal representation of a double (std::to_chars),
/// so identical runs emit byte-identical files.
std::string format_double(double v);

/// Parse a double, rejecting trailing garbage.
double parse_double(const std::string& s);

/// A column-oriented CSV writer with a fixed header. Cells are formatted
/// with format_double; rows must match the header width.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    void write(const std::string& path) const;
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

/// Numeric CSV reader: expects a header line then rows of doubles.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::size_t column(const std::string& name) const;  // throws ConfigError
};
CsvTable read_csv(const std::string& path);

/// Line-oriented `key = value` config file. `#` starts a comment. Values keep
/// their raw text; typed accessors parse on demand. Unknown keys are kept so
/// callers can reject them explicitly.
class KeyValueFile {
  public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;             // throws if absent
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    /// `[a, b]` or `a, b` -> pair.
    std::pair<double, double> get_interval(const std::string& key) const;
    /// Comma-separated doubles.
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

}  // namespace quadprop
