#include "weyl/interp.hpp"
#include "weyl/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace weyl {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    auto n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 nodes and matching sizes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double hd0, double hd1, double d0, double d1) {
        double m = ((2.0 * hd0 + hd1) * d0 - hd0 * d1) / (hd0 + hd1);
        if (m * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return m;
    };
    if (n == 2) {
        m_[0] = m_[1] = delta[0];
    } else {
        m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

double MonotoneCubic::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (x_[mid] <= x ? lo : hi) = mid;
    }
    double h = x_[lo + 1] - x_[lo];
    double t = (x - x_[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
}

bool log_enabled() {
    static int cached = -1;
    if (cached < 0) {
        const char* env = std::getenv("WEYL_LOG");
        cached = (env && *env && std::strcmp(env, "0") != 0) ? 1 : 0;
    }
    return cached == 1;
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::fprintf(stderr, "[weyl] %s\n", msg.c_str());
}

}  // namespace weyl
