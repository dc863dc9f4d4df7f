// Minimal library walkthrough: quantify one image with the default
// thresholds and calibration, print the report to stdout.

#include <iostream>

#include "leafquant/image_io.hpp"
#include "leafquant/quantify.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: quantify_single <image.png|jpg>\n";
    return 64;
  }
  try {
    const leafquant::RgbImage image = leafquant::load_image(argv[1]);
    const leafquant::ImageReport rep = leafquant::quantify_image(
        image, argv[1], leafquant::SegmentationConfig{}, leafquant::Calibration{});
    std::cout << "quality          " << rep.quality << "\n"
              << "green_px         " << rep.green_px << "\n"
              << "defect_px        " << rep.defect_px << "\n"
              << "leaf_px          " << rep.leaf_px << "\n"
              << "leaf_area_mm2    " << rep.leaf_area_mm2 << "\n"
              << "defect_area_mm2  " << rep.defect_area_mm2 << "\n"
              << "percent_defect   " << rep.percent_defect << "\n";
  } catch (const leafquant::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
