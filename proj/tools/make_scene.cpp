// Writes the deterministic synthetic test scene as an 8-bit PNG.
#include <cstdlib>
#include <iostream>
#include <string>

#include "qjacobi/imaging.hpp"

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: make_scene <height> <width> <out.png>\n";
        return 2;
    }
    const long h = std::strtol(argv[1], nullptr, 10);
    const long w = std::strtol(argv[2], nullptr, 10);
    if (h < 1 || w < 1) {
        std::cerr << "dimensions must be positive\n";
        return 2;
    }
    try {
        qjacobi::imaging::write_png(qjacobi::imaging::synthetic_scene(h, w), argv[3]);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
