#include "vcm/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vcm {

Image8 render_map(const std::function<double(Point)>& color_at, const Rect& bounds, int width) {
    if (width < 16) throw std::invalid_argument("raster width must be at least 16");
    if (!(bounds.width() > 0.0) || !(bounds.height() > 0.0)) {
        throw std::invalid_argument("raster bounds are degenerate");
    }
    int height = std::max<int>(
        1, static_cast<int>(std::llround(width * bounds.height() / bounds.width())));
    Image8 img;
    img.width = width;
    img.height = height;
    img.px.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    double pw = bounds.width() / width;
    double ph = bounds.height() / height;
    for (int y = 0; y < height; ++y) {
        double cy = bounds.ymax - (y + 0.5) * ph;  // row 0 at the top
        for (int x = 0; x < width; ++x) {
            double cx = bounds.xmin + (x + 0.5) * pw;
            double c = std::clamp(color_at(Point{cx, cy}), 0.0, 1.0);
            img.px[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                   static_cast<std::size_t>(x)] =
                static_cast<unsigned char>(std::lround(255.0 * c));
        }
    }
    return img;
}

double quadtree_color_at(const QuadTree& tree, Point p) {
    int i = tree.leaf_at(p);
    if (i < 0) return 0.0;
    const QuadNode& n = tree.node(i);
    return n.state == BlockState::Colored ? n.color : 0.0;
}

void write_pgm(const Image8& img, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "P5\n%d %d\n255\n", img.width, img.height);
    std::fwrite(img.px.data(), 1, img.px.size(), f);
    std::fclose(f);
}

}  // namespace vcm
