#include "graphlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphlab/errors.hpp"

namespace graphlab {

Tensor laplacian(const FeaturedGraph& g) {
    const std::size_t n = g.order();
    std::vector<double> d(n * n, 0.0);
    for (const auto& [u, v] : g.edges()) {
        d[std::size_t(u) * n + v] = -1.0;
        d[std::size_t(v) * n + u] = -1.0;
        d[std::size_t(u) * n + u] += 1.0;
        d[std::size_t(v) * n + v] += 1.0;
    }
    return Tensor(n, n, std::move(d));
}

EigenDecomposition sym_eig(const Tensor& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw ContractError("sym_eig: matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12) {
                throw ContractError("sym_eig: matrix not symmetric within 1e-12");
            }

    std::vector<double> a = m.values();
    std::vector<double> u(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) u[i * n + i] = 1.0;

    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
        double max_off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) max_off = std::max(max_off, std::abs(a[i * n + j]));
        if (max_off < kOffTol) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < kOffTol) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[r * n + p];
                        const double arq = a[r * n + q];
                        a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
                        a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
                    }
                    const double urp = u[r * n + p];
                    const double urq = u[r * n + q];
                    u[r * n + p] = urp - s * (urq + tau * urp);
                    u[r * n + q] = urq + s * (urp - tau * urq);
                }
            }
        }
    }

    // sort eigenvalues ascending, reorder the columns accordingly
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    EigenDecomposition dec;
    dec.eigenvalues.resize(n);
    std::vector<double> vecs(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        dec.eigenvalues[k] = a[src * n + src];
        double sign = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (std::abs(u[r * n + src]) > 1e-8) {
                sign = u[r * n + src] > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) vecs[r * n + k] = sign * u[r * n + src];
    }
    dec.vectors = Tensor(n, n, std::move(vecs));
    return dec;
}

} // namespace graphlab
