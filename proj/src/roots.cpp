#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnev/divisor.hpp"
#include "qnev/error.hpp"

namespace qnev {

namespace {

using cd = std::complex<double>;

struct Horner {
    cd p, dp;
};

Horner horner(const std::vector<double>& a, cd z) {
    cd p = a.back(), dp = 0.0;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    return {p, dp};
}

cd eval_poly(const std::vector<double>& a, cd z) {
    cd p = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;) p = p * z + a[k];
    return p;
}

double eval_bound(const std::vector<double>& a, double r) {
    double s = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) s = s * r + std::abs(a[k]);
    return s;
}

std::vector<double> deriv(std::vector<double> a, int order) {
    for (int o = 0; o < order && a.size() > 1; ++o) {
        for (std::size_t k = 1; k < a.size(); ++k) a[k - 1] = static_cast<double>(k) * a[k];
        a.pop_back();
    }
    return a;
}

std::vector<cd> aberth(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    double lead = a.back();
    double radius = std::pow(std::abs(a.front() / lead), 1.0 / n);
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
    std::vector<cd> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            Horner h = horner(a, z[k]);
            if (h.p == 0.0) continue;
            cd ratio = h.p / h.dp;
            cd sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            cd w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (worst < 4.0 * eps) break;
    }
    return z;
}

// Newton on the (m-1)-th derivative, where an m-fold root is simple.
cd polish(const std::vector<double>& a, cd c, int m) {
    std::vector<double> d = deriv(a, m - 1);
    if (d.size() < 2) return c;
    for (int it = 0; it < 8; ++it) {
        Horner h = horner(d, c);
        if (h.dp == 0.0) break;
        cd step = h.p / h.dp;
        cd next = c - step;
        if (std::abs(eval_poly(d, next)) > std::abs(h.p)) break;
        c = next;
        if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(c))) break;
    }
    return c;
}

bool is_multiple_root(const std::vector<double>& a, cd c, int m) {
    double r = std::abs(c);
    for (int k = 0; k < m; ++k) {
        std::vector<double> d = deriv(a, k);
        double bound = eval_bound(d, r);
        if (std::abs(eval_poly(d, c)) > 1e-7 * bound) return false;
    }
    return true;
}

void cluster(const std::vector<double>& a, const std::vector<cd>& z, std::vector<int> idx, double tau,
             std::vector<ComplexRoot>& out) {
    const std::size_t n = idx.size();
    std::vector<int> label(n, -1);
    int groups = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] >= 0) continue;
        label[i] = groups;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (label[v] >= 0) continue;
                cd zu = z[idx[u]], zv = z[idx[v]];
                if (std::abs(zu - zv) <= tau * (1.0 + std::max(std::abs(zu), std::abs(zv)))) {
                    label[v] = groups;
                    stack.push_back(v);
                }
            }
        }
        ++groups;
    }
    for (int g = 0; g < groups; ++g) {
        std::vector<int> members;
        cd centroid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == g) {
                members.push_back(idx[i]);
                centroid += z[idx[i]];
            }
        int m = static_cast<int>(members.size());
        centroid /= static_cast<double>(m);
        if (m == 1) {
            out.push_back({polish(a, centroid, 1), 1});
            continue;
        }
        cd c = polish(a, centroid, m);
        if (is_multiple_root(a, c, m)) {
            out.push_back({c, m});
        } else if (tau > 1e-10) {
            cluster(a, z, members, tau * 0.1, out);
        } else {
            for (int k : members) out.push_back({polish(a, z[k], 1), 1});
        }
    }
}

}  // namespace

std::vector<ComplexRoot> complex_roots(const RealPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
    std::vector<double> a = p.coeffs();
    int zeros = 0;
    while (a.size() > 1 && a.front() == 0.0) {
        a.erase(a.begin());
        ++zeros;
    }
    std::vector<ComplexRoot> raw;
    if (a.size() > 1) {
        std::vector<cd> z = aberth(a);
        std::vector<int> idx(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) idx[i] = static_cast<int>(i);
        cluster(a, z, idx, 1e-2, raw);
    }

    // Conjugate closure: snap near-real clusters onto the axis, pair the rest.
    std::vector<ComplexRoot> real, upper, lower;
    for (auto& r : raw) {
        double tol = 1e-7 * (1.0 + std::abs(r.value));
        if (std::abs(r.value.imag()) <= tol) {
            real.push_back({{r.value.real(), 0.0}, r.multiplicity});
        } else if (r.value.imag() > 0.0) {
            upper.push_back(r);
        } else {
            lower.push_back(r);
        }
    }
    std::vector<ComplexRoot> out;
    if (zeros > 0) out.push_back({{0.0, 0.0}, zeros});
    // merge real clusters that the snapping made coincide
    std::sort(real.begin(), real.end(), [](auto& x, auto& y) { return x.value.real() < y.value.real(); });
    for (auto& r : real) {
        if (!out.empty() && out.back().value.imag() == 0.0 &&
            std::abs(out.back().value.real() - r.value.real()) <= 1e-6 * (1.0 + std::abs(r.value))) {
            out.back().multiplicity += r.multiplicity;
        } else {
            out.push_back(r);
        }
    }
    std::vector<bool> used(lower.size(), false);
    for (auto& u : upper) {
        std::size_t best = lower.size();
        double dist = INFINITY;
        for (std::size_t k = 0; k < lower.size(); ++k) {
            if (used[k] || lower[k].multiplicity != u.multiplicity) continue;
            double d = std::abs(std::conj(lower[k].value) - u.value);
            if (d < dist) {
                dist = d;
                best = k;
            }
        }
        if (best == lower.size() || dist > 1e-6 * (1.0 + std::abs(u.value)))
            throw Error(ErrorKind::RootFinderFailed, "roots of a real polynomial not conjugate-closed");
        used[best] = true;
        cd v = 0.5 * (u.value + std::conj(lower[best].value));
        out.push_back({v, u.multiplicity});
        out.push_back({std::conj(v), u.multiplicity});
    }
    int total = 0;
    for (auto& r : out) total += r.multiplicity;
    if (total != p.degree()) throw Error(ErrorKind::RootFinderFailed, "multiplicities do not sum to degree");
    return out;
}

}  // namespace qnev
