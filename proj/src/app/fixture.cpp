#include "epwind/fixture.hpp"

#include <cmath>
#include <numbers>

#include "epwind/error.hpp"

namespace epwind::fixture {

PolyMatrixFamily family() { return parse_family(kFamilyText); }

Region region() { return {-2.0, 2.0, -2.0, 2.0}; }

std::string config_text() {
    return "# H(z) = [[1, z, 0], [z, -1, 0], [0, 0, 2z]]\n"
           "region = -2 2 -2 2\n"
           "resolution = 128 128\n"
           "criterion = real\n"
           "circle = 0 1 0.5 144 cw\n"
           "loop = 0.3 0.8; 0.15 1.05; -0.15 1.05; -0.3 0.8; 0 0.6\n"
           "```family\n" +
           std::string(kFamilyText) + "\n```\n";
}

std::array<Complex, 3> closed_form(Complex z) {
    const Complex w = std::sqrt(1.0 + z * z);
    return {w, -w, 2.0 * z};
}

LoopPath larger_loop() { return circle_loop({0.0, 1.0}, 0.5, 0.8 * std::numbers::pi, true, 256); }

LoopPath smaller_loop() { return LoopPath({kSmallBasepoint, {0.15, 1.05}, {-0.15, 1.05}, {-0.3, 0.8}, {0.0, 0.6}}); }

Permutation m1() { return Permutation::from_matrix({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}); }
Permutation m2() { return Permutation::from_matrix({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}); }
Permutation m3() { return Permutation::from_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}); }

std::string family_label(const BranchLine& line) {
    double sum = 0.0;
    double max_abs = 0.0;
    for (Complex z : line.polyline) {
        sum += z.real();
        max_abs = std::max(max_abs, std::abs(z.real()));
    }
    const double mean = sum / static_cast<double>(line.polyline.size());
    if (max_abs < 0.05) return "M1";
    return mean < 0.0 ? "M2" : "M3";
}

Permutation matrix_for(const std::string& family) {
    if (family == "M1") return m1();
    if (family == "M2") return m2();
    if (family == "M3") return m3();
    throw InvalidInput("unknown line family " + family);
}

}  // namespace epwind::fixture
