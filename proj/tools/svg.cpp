#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hsurf::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

SvgChart::SvgChart(double x_lo, double x_hi, double y_lo, double y_hi, int width, int height)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), width_(width), height_(height) {
    if (!(x_hi > x_lo) || !(y_hi > y_lo)) throw std::invalid_argument("empty chart window");
}

double SvgChart::px(double x) const { return margin_ + (x - x_lo_) / (x_hi_ - x_lo_) * (width_ - 2 * margin_); }
double SvgChart::py(double y) const { return height_ - margin_ - (y - y_lo_) / (y_hi_ - y_lo_) * (height_ - 2 * margin_); }

void SvgChart::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double stroke) {
    if (pts.empty()) return;
    std::string d;
    for (const auto& [x, y] : pts) d += num(px(x)) + "," + num(py(y)) + " ";
    d.pop_back();
    body_.push_back("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\" points=\"" + d +
                    "\"/>");
}

void SvgChart::segment(double x0, double y0, double x1, double y1, const std::string& color, double stroke) {
    body_.push_back("<line x1=\"" + num(px(x0)) + "\" y1=\"" + num(py(y0)) + "\" x2=\"" + num(px(x1)) + "\" y2=\"" +
                    num(py(y1)) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\"/>");
}

void SvgChart::band(const std::vector<double>& xs, const std::vector<double>& lower, const std::vector<double>& upper,
                    const std::string& color, double opacity) {
    if (xs.empty() || xs.size() != lower.size() || xs.size() != upper.size()) return;
    std::string d;
    for (std::size_t i = 0; i < xs.size(); ++i) d += num(px(xs[i])) + "," + num(py(upper[i])) + " ";
    for (std::size_t i = xs.size(); i-- > 0;) d += num(px(xs[i])) + "," + num(py(lower[i])) + " ";
    d.pop_back();
    body_.push_back("<polygon fill=\"" + color + "\" fill-opacity=\"" + num(opacity) + "\" stroke=\"" + color +
                    "\" stroke-width=\"0.5\" points=\"" + d + "\"/>");
}

void SvgChart::rect(double x0, double y0, double x1, double y1, const std::string& color, double opacity) {
    double l = std::min(px(x0), px(x1)), r = std::max(px(x0), px(x1));
    double t = std::min(py(y0), py(y1)), b = std::max(py(y0), py(y1));
    body_.push_back("<rect x=\"" + num(l) + "\" y=\"" + num(t) + "\" width=\"" + num(r - l) + "\" height=\"" + num(b - t) +
                    "\" fill=\"" + color + "\" fill-opacity=\"" + num(opacity) + "\"/>");
}

void SvgChart::label(double x, double y, const std::string& text) {
    body_.push_back("<text x=\"" + num(px(x)) + "\" y=\"" + num(py(y)) + "\" font-size=\"11\" font-family=\"sans-serif\">" +
                    escape_xml(text) + "</text>");
}

void SvgChart::axes(const std::string& x_name, const std::string& y_name) {
    std::string c = "#333";
    segment(x_lo_, y_lo_, x_hi_, y_lo_, c);
    segment(x_lo_, y_lo_, x_lo_, y_hi_, c);
    for (int i = 0; i <= 4; ++i) {
        double x = x_lo_ + (x_hi_ - x_lo_) * i / 4, y = y_lo_ + (y_hi_ - y_lo_) * i / 4;
        body_.push_back("<text x=\"" + num(px(x) - 10) + "\" y=\"" + num(height_ - margin_ + 16) +
                        "\" font-size=\"10\" font-family=\"sans-serif\">" + num(x) + "</text>");
        body_.push_back("<text x=\"" + num(4) + "\" y=\"" + num(py(y) + 4) + "\" font-size=\"10\" font-family=\"sans-serif\">" +
                        num(y) + "</text>");
    }
    body_.push_back("<text x=\"" + num(width_ / 2.0) + "\" y=\"" + num(height_ - 8) +
                    "\" font-size=\"12\" font-family=\"sans-serif\">" + escape_xml(x_name) + "</text>");
    body_.push_back("<text x=\"" + num(8) + "\" y=\"" + num(margin_ - 14) + "\" font-size=\"12\" font-family=\"sans-serif\">" +
                    escape_xml(y_name) + "</text>");
}

std::string SvgChart::str() const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_ << "\" viewBox=\"0 0 "
      << width_ << " " << height_ << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& e : body_) o << e << "\n";
    o << "</svg>\n";
    return o.str();
}

std::string SvgChart::palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
    return colors[i % 10];
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace hsurf::cli
