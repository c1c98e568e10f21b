#include "confhyp/fd.hpp"

namespace confhyp {

void FDScheme::validate() const {
  if (!(step >= 0) || !std::isfinite(step)) throw InputError("finite-difference step must be >= 0 (0 = automatic)");
  if (order != 2 && order != 4) throw InputError("finite-difference order must be 2 or 4");
}

Real FDScheme::base_step() const {
  if (step > 0) return step;
  return std::pow(kEps, Real(1) / (order + 2));
}

namespace fd_detail {

const std::vector<Tap>& first_taps(int order) {
  static const std::vector<Tap> o2{{-1, -0.5L}, {1, 0.5L}};
  static const std::vector<Tap> o4{{-2, 1.0L / 12}, {-1, -8.0L / 12}, {1, 8.0L / 12}, {2, -1.0L / 12}};
  return order == 2 ? o2 : o4;
}

const std::vector<Tap>& second_taps(int order) {
  static const std::vector<Tap> o2{{-1, 1}, {0, -2}, {1, 1}};
  static const std::vector<Tap> o4{
      {-2, -1.0L / 12}, {-1, 16.0L / 12}, {0, -30.0L / 12}, {1, 16.0L / 12}, {2, -1.0L / 12}};
  return order == 2 ? o2 : o4;
}

}  // namespace fd_detail
}  // namespace confhyp
