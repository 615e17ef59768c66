#include <adim/io.hpp>

#include <algorithm>
#include <sstream>

namespace adim {

namespace {

constexpr int kCell = 20;

const char* terrain_fill(Terrain t)
{
    switch (t) {
    case Terrain::WALL:
        return "#000000";
    case Terrain::LOW:
        return "#8e44ad";
    case Terrain::RUBBLE:
        return "#e67e22";
    case Terrain::FREE:
        break;
    }
    return "#ffffff";
}

const char* controller_stroke(Controller c)
{
    switch (c) {
    case Controller::WALK_CTRL:
        return "#1f77b4";
    case Controller::CRAWL_CTRL:
        return "#2ca02c";
    case Controller::FULLBODY_CTRL:
        return "#d62728";
    case Controller::NONE:
        break;
    }
    return "#7f7f7f";
}

int centre(int v) { return v * kCell + kCell / 2; }

} // namespace

std::string render_svg(const World& w, const std::optional<Path>& path,
                       const std::vector<HDRegion>& regions)
{
    std::ostringstream os;
    const int W = w.width() * kCell;
    const int H = w.height() * kCell;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<g id=\"terrain\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int y = 0; y < w.height(); ++y) {
        for (int x = 0; x < w.width(); ++x) {
            os << "<rect x=\"" << x * kCell << "\" y=\"" << y * kCell << "\" width=\"" << kCell
               << "\" height=\"" << kCell << "\" fill=\"" << terrain_fill(w.at(x, y)) << "\"/>\n";
        }
    }
    os << "</g>\n<g id=\"regions\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\" stroke-dasharray=\"6,4\">\n";
    for (const auto& r : regions) {
        const int x0 = std::max(0, r.center.x - r.radius);
        const int y0 = std::max(0, r.center.y - r.radius);
        const int x1 = std::min(w.width() - 1, r.center.x + r.radius);
        const int y1 = std::min(w.height() - 1, r.center.y + r.radius);
        os << "<rect x=\"" << x0 * kCell << "\" y=\"" << y0 * kCell << "\" width=\""
           << (x1 - x0 + 1) * kCell << "\" height=\"" << (y1 - y0 + 1) * kCell << "\"/>\n";
    }
    os << "</g>\n<g id=\"path\" fill=\"none\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
    if (path) {
        for (const auto& seg : split_segments(*path)) {
            os << "<polyline data-controller=\"" << to_string(seg.controller) << "\" stroke=\""
               << controller_stroke(seg.controller) << "\" points=\"";
            const auto states = seg.path.states();
            for (std::size_t i = 0; i < states.size(); ++i) {
                os << (i ? " " : "") << centre(states[i].x) << ',' << centre(states[i].y);
            }
            os << "\"/>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace adim
