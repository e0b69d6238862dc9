#pragma once

#include "weyl/analysis.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace weyl::io {

// 17 significant digits, '.' decimal point, locale-independent.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

class CsvWriter {
  public:
    explicit CsvWriter(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    const std::string& text() const { return buf_; }
    void write(const std::string& path) const;

  private:
    std::string buf_;
    std::size_t width_;
};

std::string csv_cell(double v);
std::string csv_cell(long long v);

// Insertion-ordered JSON tree; numbers carry 17 significant digits.
class JsonValue {
  public:
    static JsonValue object();
    static JsonValue array();
    static JsonValue number(double v);
    static JsonValue integer(long long v);
    static JsonValue str(std::string v);
    static JsonValue boolean(bool v);

    JsonValue& set(const std::string& key, JsonValue v);  // objects
    JsonValue& push(JsonValue v);                         // arrays
    std::string dump(int indent = 2) const;

  private:
    enum class Kind { Object, Array, Number, Integer, String, Bool };
    Kind kind_ = Kind::Object;
    double num_ = 0;
    long long int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> items_;

    void dump_to(std::string& out, int indent, int depth) const;
};

// Self-contained SVG: log-log scatter of window maxima, the fitted line, and
// dashed reference lines with the classical and improved slopes.
std::string loglog_plot_svg(const std::vector<analysis::Window>& windows,
                            const analysis::ExponentFit& fit, double classical_exponent,
                            double improved_exponent, const std::string& title);

}  // namespace weyl::io
