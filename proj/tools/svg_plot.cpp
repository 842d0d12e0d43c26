#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vortexform::tools {

namespace {

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& ylabel, const std::vector<double>& t,
                          const std::vector<Series>& series, const std::vector<double>& bands) {
    const double W = 900, H = 360, L = 70, R = 20, T = 40, B = 50;
    double t0 = t.empty() ? 0.0 : t.front(), t1 = t.empty() ? 1.0 : t.back();
    if (t1 <= t0) t1 = t0 + 1.0;
    double lo = 0.0, hi = 0.0;
    for (const auto& s : series) {
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    for (double b : bands) {
        lo = std::min(lo, -b);
        hi = std::max(hi, b);
    }
    if (hi - lo < 1e-9) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto X = [&](double v) { return L + (v - t0) / (t1 - t0) * (W - L - R); };
    auto Y = [&](double v) { return T + (hi - v) / (hi - lo) * (H - T - B); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* band_fill[] = {"#cfe8cf", "#f3e3c0"};
    // widest band first so the narrow one stays visible
    std::vector<double> bs = bands;
    std::sort(bs.rbegin(), bs.rend());
    for (std::size_t i = 0; i < bs.size(); ++i) {
        os << "<rect x=\"" << num(L) << "\" y=\"" << num(Y(bs[i])) << "\" width=\"" << num(W - L - R)
           << "\" height=\"" << num(Y(-bs[i]) - Y(bs[i])) << "\" fill=\"" << band_fill[(bs.size() - 1 - i) % 2]
           << "\"/>\n";
    }
    os << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(W - L - R) << "\" height=\""
       << num(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = lo + (hi - lo) * i / 5.0;
        os << "<text x=\"" << num(L - 6) << "\" y=\"" << num(Y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
           << "</text>\n";
        const double tv = t0 + (t1 - t0) * i / 5.0;
        os << "<text x=\"" << num(X(tv)) << "\" y=\"" << num(H - B + 18) << "\" text-anchor=\"middle\">"
           << num(tv) << "</text>\n";
    }
    os << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<text x=\"" << num(W / 2) << "\" y=\"" << num(H - 12) << "\" text-anchor=\"middle\">t (s)</text>\n";
    os << "<text x=\"16\" y=\"" << num(H / 2) << "\" transform=\"rotate(-90 16 " << num(H / 2)
       << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    int k = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        const std::size_t n = std::min(s.y.size(), t.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.y[i])) continue;
            os << num(X(t[i])) << ',' << num(Y(std::clamp(s.y[i], lo, hi))) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << num(W - R - 150) << "\" y=\"" << num(T + 16 + 16 * k) << "\" fill=\"" << s.color
           << "\">" << s.label << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace vortexform::tools
