#include "weyl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace weyl::io {

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("format_double: non-finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

CsvWriter::CsvWriter(const std::vector<std::string>& columns) : width_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("CsvWriter: no columns");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += columns[i];
    }
    buf_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: cell count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void CsvWriter::write(const std::string& path) const { write_text_file(path, buf_); }

std::string csv_cell(double v) { return format_double(v); }
std::string csv_cell(long long v) { return std::to_string(v); }

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::Object;
    return v;
}
JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::Array;
    return v;
}
JsonValue JsonValue::number(double x) {
    JsonValue v;
    v.kind_ = Kind::Number;
    v.num_ = x;
    return v;
}
JsonValue JsonValue::integer(long long x) {
    JsonValue v;
    v.kind_ = Kind::Integer;
    v.int_ = x;
    return v;
}
JsonValue JsonValue::str(std::string x) {
    JsonValue v;
    v.kind_ = Kind::String;
    v.str_ = std::move(x);
    return v;
}
JsonValue JsonValue::boolean(bool x) {
    JsonValue v;
    v.kind_ = Kind::Bool;
    v.bool_ = x;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::Object) throw std::logic_error("JsonValue::set on non-object");
    members_.push_back({key, std::move(v)});
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    if (kind_ != Kind::Array) throw std::logic_error("JsonValue::push on non-array");
    items_.push_back(std::move(v));
    return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

}  // namespace

void JsonValue::dump_to(std::string& out, int indent, int depth) const {
    std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
        case Kind::Object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad1;
                escape_into(out, members_[i].first);
                out += ": ";
                members_[i].second.dump_to(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case Kind::Array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad1;
                items_[i].dump_to(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            return;
        }
        case Kind::Number: out += format_double(num_); return;
        case Kind::Integer: out += std::to_string(int_); return;
        case Kind::String: escape_into(out, str_); return;
        case Kind::Bool: out += bool_ ? "true" : "false"; return;
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

namespace {

struct Mapper {
    double x0, x1, y0, y1;  // data extents in log10 space
    double px0 = 70, px1 = 610, py0 = 440, py1 = 40;

    double x(double lx) const { return px0 + (lx - x0) / (x1 - x0) * (px1 - px0); }
    double y(double ly) const { return py0 + (ly - y0) / (y1 - y0) * (py1 - py0); }
};

void svg_line(std::string& s, double x1, double y1, double x2, double y2,
              const std::string& style) {
    s += "<line x1=\"" + format_double(x1) + "\" y1=\"" + format_double(y1) + "\" x2=\"" +
         format_double(x2) + "\" y2=\"" + format_double(y2) + "\" " + style + "/>\n";
}

// clips the graph of ly = a + b*lx to the data box and draws it
void svg_sloped(std::string& s, const Mapper& mp, double a, double b, const std::string& style) {
    double lx0 = mp.x0, lx1 = mp.x1;
    auto yat = [&](double lx) { return a + b * lx; };
    double ylo = std::min(mp.y0, mp.y1), yhi = std::max(mp.y0, mp.y1);
    auto clip = [&](double& lo, double& hi) {
        auto inside = [&](double lx) { return yat(lx) >= ylo && yat(lx) <= yhi; };
        if (inside(lo) && inside(hi)) return true;
        if (b == 0) return inside(lo);
        double ta = (ylo - a) / b, tb = (yhi - a) / b;
        double cl = std::max(lo, std::min(ta, tb));
        double ch = std::min(hi, std::max(ta, tb));
        if (ch <= cl) return false;
        lo = cl;
        hi = ch;
        return true;
    };
    double lo = lx0, hi = lx1;
    if (!clip(lo, hi)) return;
    svg_line(s, mp.x(lo), mp.y(yat(lo)), mp.x(hi), mp.y(yat(hi)), style);
}

}  // namespace

std::string loglog_plot_svg(const std::vector<analysis::Window>& windows,
                            const analysis::ExponentFit& fit, double classical_exponent,
                            double improved_exponent, const std::string& title) {
    if (windows.empty()) throw std::invalid_argument("loglog_plot_svg: no windows");
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& w : windows) {
        double lx = std::log10(w.lambda_mid), ly = std::log10(w.max_abs_error);
        x0 = std::min(x0, lx);
        x1 = std::max(x1, lx);
        y0 = std::min(y0, ly);
        y1 = std::max(y1, ly);
    }
    if (x1 - x0 < 1e-9) x1 = x0 + 1;
    if (y1 - y0 < 1e-9) y1 = y0 + 1;
    double mx = 0.04 * (x1 - x0), my = 0.08 * (y1 - y0);
    Mapper mp{x0 - mx, x1 + mx, y0 - my, y1 + my};

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"490\" "
         "viewBox=\"0 0 660 490\">\n";
    s += "<rect width=\"660\" height=\"490\" fill=\"white\"/>\n";
    s += "<text x=\"330\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         title + "</text>\n";
    // frame
    s += "<rect x=\"70\" y=\"40\" width=\"540\" height=\"400\" fill=\"none\" stroke=\"#333\" "
         "stroke-width=\"1\"/>\n";
    // decade ticks
    for (int e = static_cast<int>(std::ceil(mp.x0)); e <= static_cast<int>(std::floor(mp.x1));
         ++e) {
        double px = mp.x(e);
        svg_line(s, px, 440, px, 446, "stroke=\"#333\"");
        s += "<text x=\"" + format_double(px) +
             "\" y=\"462\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
             "1e" +
             std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(mp.y0)); e <= static_cast<int>(std::floor(mp.y1));
         ++e) {
        double py = mp.y(e);
        svg_line(s, 64, py, 70, py, "stroke=\"#333\"");
        s += "<text x=\"60\" y=\"" + format_double(py + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" +
             std::to_string(e) + "</text>\n";
    }
    s += "<text x=\"330\" y=\"484\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">lambda</text>\n";
    s += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 240)\">max |error| per window</text>\n";

    // fitted and reference lines in log10 coordinates; natural-log fit
    // converts with intercept/ln(10)
    double ln10 = std::log(10.0);
    double fit_a = fit.intercept / ln10, fit_b = fit.slope;
    svg_sloped(s, mp, fit_a, fit_b, "stroke=\"#d62728\" stroke-width=\"1.5\"");
    // anchor both references on the fitted line's midpoint
    double xm = 0.5 * (mp.x0 + mp.x1), ym = fit_a + fit_b * xm;
    svg_sloped(s, mp, ym - classical_exponent * xm, classical_exponent,
               "stroke=\"#7f7f7f\" stroke-width=\"1\" stroke-dasharray=\"6 3\"");
    svg_sloped(s, mp, ym - improved_exponent * xm, improved_exponent,
               "stroke=\"#2ca02c\" stroke-width=\"1\" stroke-dasharray=\"2 3\"");

    for (const auto& w : windows) {
        double px = mp.x(std::log10(w.lambda_mid));
        double py = mp.y(std::log10(w.max_abs_error));
        s += "<circle cx=\"" + format_double(px) + "\" cy=\"" + format_double(py) +
             "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }

    char legend[256];
    std::snprintf(legend, sizeof(legend),
                  "fit slope %.4f; classical %.4f (grey dashed); improved %.4f (green dotted)",
                  fit.slope, classical_exponent, improved_exponent);
    s += "<text x=\"78\" y=\"56\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::string(legend) + "</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace weyl::io
