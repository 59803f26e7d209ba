#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hsurf::cli {

// Minimal SVG chart: a data window mapped onto a fixed pixel frame.
class SvgChart {
public:
    SvgChart(double x_lo, double x_hi, double y_lo, double y_hi, int width = 800, int height = 600);

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double stroke = 1.0);
    void segment(double x0, double y0, double x1, double y1, const std::string& color, double stroke = 1.0);
    // Filled region between two curves sampled at the same x values.
    void band(const std::vector<double>& xs, const std::vector<double>& lower, const std::vector<double>& upper,
              const std::string& color, double opacity);
    void rect(double x0, double y0, double x1, double y1, const std::string& color, double opacity);
    void label(double x, double y, const std::string& text);
    void axes(const std::string& x_name, const std::string& y_name);
    std::string str() const;

    static std::string palette(std::size_t i);

private:
    double px(double x) const;
    double py(double y) const;
    double x_lo_, x_hi_, y_lo_, y_hi_;
    int width_, height_;
    int margin_ = 50;
    std::vector<std::string> body_;
};

std::string escape_xml(const std::string& s);

}  // namespace hsurf::cli
