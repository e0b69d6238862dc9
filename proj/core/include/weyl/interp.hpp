#pragma once

#include <vector>

namespace weyl {

// Monotone cubic interpolation (Fritsch-Carlson). Preserves monotonicity of
// the data, which keeps interpolated mollifier profiles inside [0, 1].
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, m_;
};

}  // namespace weyl
