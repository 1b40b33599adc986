#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vcm/region.hpp"

namespace vcm {

struct Image8 {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> px;  // row 0 at the top (ymax)

    unsigned char at(int x, int y) const {
        return px[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
    }
};

// samples color_at at pixel centers; throws when width < 16
Image8 render_map(const std::function<double(Point)>& color_at, const Rect& bounds, int width);

double quadtree_color_at(const QuadTree& tree, Point p);

void write_pgm(const Image8& img, const std::string& path);

}  // namespace vcm
