#ifndef MFUSION_TEST_HELPERS_HPP
#define MFUSION_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "mfusion/imgcore.hpp"

namespace mfusion::testing {

inline Image random_image(int h, int w, std::mt19937& rng, double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Image img(h, w);
  for (double& v : img.samples) v = dist(rng);
  return img;
}

inline double max_abs_diff(const Image& x, const Image& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    m = std::max(m, std::abs(x.samples[i] - y.samples[i]));
  }
  return m;
}

inline Image make_image(int h, int w, std::initializer_list<double> vals) {
  Image img(h, w);
  std::size_t i = 0;
  for (double v : vals) img.samples[i++] = v;
  return img;
}

}  // namespace mfusion::testing

#endif
