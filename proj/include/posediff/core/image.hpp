// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posediff/core/tensor.hpp"

namespace posediff {

// 8-bit interleaved RGB raster. All file I/O goes through binary PPM (P6),
// which every image tool reads and needs no codec dependency.
struct Image8 {
    int height = 0;
    int width = 0;
    std::vector<uint8_t> pixels;  // height * width * 3, row-major RGB

    Image8() = default;
    Image8(int h, int w) : height(h), width(w), pixels(static_cast<size_t>(h) * w * 3, 0) {}

    uint8_t& at(int y, int x, int c) { return pixels[(static_cast<size_t>(y) * width + x) * 3 + c]; }
    uint8_t at(int y, int x, int c) const { return pixels[(static_cast<size_t>(y) * width + x) * 3 + c]; }
};

// [-1,1] float -> byte, round half away from zero.
uint8_t quantize_unit(float v);

// Planar [3,H,W] in [-1,1] <-> interleaved bytes.
Image8 to_image8(const Tensor<float>& chw);
Tensor<float> from_image8(const Image8& img);

// One batch entry of a [N,3,H,W] tensor.
Image8 batch_entry_to_image8(const Tensor<float>& nchw, int64_t index);

void write_ppm(const std::string& path, const Image8& img);
Image8 read_ppm(const std::string& path);

// rows x cols mosaic with a 2px separator; entries in row-major order,
// missing cells stay black.
Image8 make_grid(const std::vector<Image8>& tiles, int rows, int cols);

}  // namespace posediff
