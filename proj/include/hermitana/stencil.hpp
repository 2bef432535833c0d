// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_STENCIL_HPP
#define HERMITANA_STENCIL_HPP

#include <span>
#include <vector>

namespace hermitana {

/// Finite-difference weights for the m-th derivative at x0 on the given
/// nodes (Fornberg's recursion). Nodes need not be uniform or ordered.
inline std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order)
{
    const int n = static_cast<int>(nodes.size());
    // c[j][k]: weight of node j for the k-th derivative
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j)
        w[j] = c[j][order];
    return w;
}

/// Nodes {-2h,-h,h,2h} relative to the center; combined with
/// fd_weights this yields the standard 4th-order first derivative.
inline std::vector<double> central4_offsets(double h)
{
    return {-2.0 * h, -h, h, 2.0 * h};
}

} // namespace hermitana

#endif
