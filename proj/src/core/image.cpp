// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#include "posediff/core/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace posediff {

uint8_t quantize_unit(float v) {
    float scaled = (std::clamp(v, -1.0f, 1.0f) + 1.0f) * 0.5f * 255.0f;
    // round half away from zero; scaled is non-negative here
    float r = std::floor(scaled + 0.5f);
    return static_cast<uint8_t>(std::clamp(r, 0.0f, 255.0f));
}

Image8 to_image8(const Tensor<float>& chw) {
    if (chw.rank() != 3 || chw.size(0) != 3)
        throw std::invalid_argument("to_image8: expected [3,H,W], got " + shape_str(chw.shape()));
    int h = static_cast<int>(chw.size(1));
    int w = static_cast<int>(chw.size(2));
    Image8 img(h, w);
    const float* p = chw.data();
    int64_t plane = static_cast<int64_t>(h) * w;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) img.at(y, x, c) = quantize_unit(p[c * plane + y * w + x]);
    return img;
}

Tensor<float> from_image8(const Image8& img) {
    Tensor<float> t(Shape{3, img.height, img.width});
    int64_t plane = static_cast<int64_t>(img.height) * img.width;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c)
                t[c * plane + y * img.width + x] = static_cast<float>(img.at(y, x, c)) / 255.0f * 2.0f - 1.0f;
    return t;
}

Image8 batch_entry_to_image8(const Tensor<float>& nchw, int64_t index) {
    if (nchw.rank() != 4) throw std::invalid_argument("batch_entry_to_image8: expected rank-4 tensor");
    if (index < 0 || index >= nchw.size(0)) throw std::out_of_range("batch_entry_to_image8: index out of range");
    int64_t c = nchw.size(1), h = nchw.size(2), w = nchw.size(3);
    Tensor<float> one(Shape{c, h, w});
    const float* src = nchw.data() + index * c * h * w;
    std::copy(src, src + c * h * w, one.data());
    return to_image8(one);
}

void write_ppm(const std::string& path, const Image8& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "P6\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {
int read_ppm_token(std::istream& in) {
    // skips whitespace and '#' comments
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v;
    if (!(in >> v)) throw std::runtime_error("malformed PPM header");
    return v;
}
}  // namespace

Image8 read_ppm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open image file: " + path);
    char m0 = 0, m1 = 0;
    f.get(m0);
    f.get(m1);
    if (m0 != 'P' || m1 != '6') throw std::runtime_error("not a binary PPM (P6) file: " + path);
    int w = read_ppm_token(f);
    int h = read_ppm_token(f);
    int maxval = read_ppm_token(f);
    if (maxval != 255) throw std::runtime_error("unsupported PPM maxval (want 255): " + path);
    f.get();  // single whitespace after maxval
    Image8 img(h, w);
    f.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error("truncated PPM file: " + path);
    return img;
}

Image8 make_grid(const std::vector<Image8>& tiles, int rows, int cols) {
    if (tiles.empty() || rows <= 0 || cols <= 0) throw std::invalid_argument("make_grid: empty input");
    int th = tiles[0].height, tw = tiles[0].width;
    for (const auto& t : tiles)
        if (t.height != th || t.width != tw) throw std::invalid_argument("make_grid: tile sizes differ");
    const int sep = 2;
    Image8 grid(rows * th + (rows - 1) * sep, cols * tw + (cols - 1) * sep);
    for (size_t i = 0; i < tiles.size(); ++i) {
        int r = static_cast<int>(i) / cols;
        int c = static_cast<int>(i) % cols;
        if (r >= rows) break;
        int oy = r * (th + sep), ox = c * (tw + sep);
        for (int y = 0; y < th; ++y)
            for (int x = 0; x < tw; ++x)
                for (int ch = 0; ch < 3; ++ch) grid.at(oy + y, ox + x, ch) = tiles[i].at(y, x, ch);
    }
    return grid;
}

}  // namespace posediff
