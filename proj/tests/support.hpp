#pragma once

#include <cmath>
#include <vector>

namespace gnflow::testing {

// log2(e[i-1] / e[i]) for successive grid doublings.
inline std::vector<double> doubling_orders(const std::vector<double>& e)
{
    std::vector<double> o;
    for (std::size_t i = 1; i < e.size(); ++i)
        o.push_back(std::log2(e[i - 1] / e[i]));
    return o;
}

inline double min_of(const std::vector<double>& v)
{
    double m = v.empty() ? NAN : v.front();
    for (double x : v)
        m = x < m ? x : m;
    return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace gnflow::testing
