#include "svg.hpp"

#include <sstream>

namespace flipdist::cli {

namespace {

constexpr int kStep = 40;
constexpr int kMargin = 30;

void arc(std::ostringstream& s, int a, int b, bool up, const char* color, bool dashed = false) {
    const int x1 = kMargin + a * kStep, x2 = kMargin + b * kStep;
    const int r = (x2 - x1) / 2;
    s << "  <path d=\"M " << x1 << " 0 A " << r << " " << r << " 0 0 " << (up ? 1 : 0) << " " << x2
      << " 0\" fill=\"none\" stroke=\"" << color << "\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
}

}  // namespace

std::string render_linear_svg(const Triangulation& above, const Triangulation& below) {
    const int n = above.n();
    const int width = 2 * kMargin + (n - 1) * kStep;
    const int half = (n - 1) * kStep / 2 + kMargin;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << 2 * half
      << "\" viewBox=\"0 " << -half << " " << width << " " << 2 * half << "\">\n";
    s << "  <line x1=\"" << kMargin << "\" y1=\"0\" x2=\"" << kMargin + (n - 1) * kStep
      << "\" y2=\"0\" stroke=\"black\" stroke-width=\"2\"/>\n";
    // The cut edge closes the polygon on both sides.
    arc(s, 0, n - 1, true, "gray", true);
    arc(s, 0, n - 1, false, "gray", true);
    for (const Edge& e : above.diagonals()) arc(s, e.a, e.b, true, "steelblue");
    for (const Edge& e : below.diagonals()) arc(s, e.a, e.b, false, "firebrick");
    for (int v = 0; v < n; ++v) {
        const int x = kMargin + v * kStep;
        s << "  <circle cx=\"" << x << "\" cy=\"0\" r=\"4\" fill=\"black\"/>\n";
        s << "  <text x=\"" << x + 3 << "\" y=\"14\" font-size=\"10\">" << v << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace flipdist::cli
