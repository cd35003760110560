#include "mtco/hungarian.hpp"

#include <limits>
#include <stdexcept>

namespace mtco {

Assignment max_weight_assignment(const Matrix& w) {
    if (w.rows() != w.cols()) throw std::invalid_argument("max_weight_assignment: matrix must be square");
    const std::size_t n = w.rows();
    Assignment out;
    out.column_of_row.assign(n, -1);
    if (n == 0) return out;

    // Minimise -w. Arrays are 1-based; index 0 is the virtual root.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    for (std::size_t j = 1; j <= n; ++j) out.column_of_row[p[j] - 1] = static_cast<int>(j - 1);
    for (std::size_t i = 0; i < n; ++i) out.total += w(i, static_cast<std::size_t>(out.column_of_row[i]));
    return out;
}

}  // namespace mtco
