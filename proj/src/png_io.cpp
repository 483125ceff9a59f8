#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qjacobi/imaging.hpp"

namespace qjacobi::imaging {

ColorImage read_png(const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        throw IoError("cannot read PNG " + path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("cannot decode PNG " + path.string() + ": " + msg);
    }
    const Eigen::Index h = image.height, w = image.width;
    ColorImage img(h, w);
    for (Eigen::Index y = 0; y < h; ++y) {
        for (Eigen::Index x = 0; x < w; ++x) {
            const std::uint8_t* px = &buf[static_cast<std::size_t>((y * w + x) * 4)];
            img.r(y, x) = px[0];
            img.g(y, x) = px[1];
            img.b(y, x) = px[2];
        }
    }
    return img;
}

void write_png(const ColorImage& img, const std::filesystem::path& path) {
    const Eigen::Index h = img.height(), w = img.width();
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(h * w * 3));
    auto to_byte = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))); };
    for (Eigen::Index y = 0; y < h; ++y) {
        for (Eigen::Index x = 0; x < w; ++x) {
            std::uint8_t* px = &buf[static_cast<std::size_t>((y * w + x) * 3)];
            px[0] = to_byte(img.r(y, x));
            px[1] = to_byte(img.g(y, x));
            px[2] = to_byte(img.b(y, x));
        }
    }
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(w);
    image.height = static_cast<png_uint_32>(h);
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr)) {
        throw IoError("cannot write PNG " + path.string() + ": " + image.message);
    }
}

} // namespace qjacobi::imaging
