#include "qnev/integrate.hpp"

#include <cmath>
#include <exception>

#include "qnev/error.hpp"

namespace qnev {

void IntegratorConfig::validate() const {
    if (samples < 1000) throw Error(ErrorKind::InvalidConfig, "samples must be at least 1000");
    if (!(reject_tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "reject_tol must be positive");
}

double rejection_threshold(const IntegratorConfig& cfg, double r, int degree) {
    return cfg.reject_tol * std::pow(1.0 + r, std::max(degree, 0));
}

namespace {

struct Welford {
    std::size_t n = 0;
    std::vector<double> mean, m2;

    explicit Welford(std::size_t width = 0) : mean(width, 0.0), m2(width, 0.0) {}

    void add(const double* x) {
        ++n;
        for (std::size_t k = 0; k < mean.size(); ++k) {
            double d = x[k] - mean[k];
            mean[k] += d / static_cast<double>(n);
            m2[k] += d * (x[k] - mean[k]);
        }
    }

    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
        for (std::size_t k = 0; k < mean.size(); ++k) {
            double d = o.mean[k] - mean[k];
            mean[k] += d * (nb / nt);
            m2[k] += o.m2[k] + d * d * (na * nb / nt);
        }
        n += o.n;
    }
};

struct ChunkResult {
    Welford acc;
    std::size_t rejected = 0;
};

std::size_t unit_count(const IntegratorConfig& cfg) {
    return cfg.scheme == Scheme::AntitheticPair ? cfg.samples / 2 : cfg.samples;
}

bool finite_all(const double* x, std::size_t w) {
    for (std::size_t k = 0; k < w; ++k)
        if (!std::isfinite(x[k])) return false;
    return true;
}

bool evaluate(const Integrand& f, const Quaternion& w, double* out, std::size_t width) {
    try {
        return f(w, out) && finite_all(out, width);
    } catch (const Error&) {
        return false;
    }
}

// Draws the units of one chunk and hands each accepted unit to `sink`.
template <class Sink>
std::size_t run_chunk(const Integrand& f, std::size_t width, const SphereSampler& sampler, const IntegratorConfig& cfg,
                      std::uint64_t chunk, std::size_t units, Sink&& sink) {
    SphereSampler::Stream stream = sampler.chunk_stream(chunk);
    std::vector<double> a(width), b(width);
    std::size_t done = 0, rejected = 0;
    const bool pair = cfg.scheme == Scheme::AntitheticPair;
    while (done < units) {
        if (rejected > units) break;
        Quaternion w = stream.next();
        if (!evaluate(f, w, a.data(), width)) {
            ++rejected;
            continue;
        }
        if (pair) {
            if (!evaluate(f, conj(w), b.data(), width)) {
                ++rejected;
                continue;
            }
            for (std::size_t k = 0; k < width; ++k) a[k] = 0.5 * (a[k] + b[k]);
        }
        sink(a.data());
        ++done;
    }
    return rejected;
}

std::vector<SphericalMean> finish(const Welford& acc, std::size_t rejected, const IntegratorConfig& cfg) {
    if (static_cast<double>(rejected) > 0.001 * static_cast<double>(cfg.samples))
        throw Error(ErrorKind::TooManyRejections, std::to_string(rejected) + " samples rejected");
    std::vector<SphericalMean> out(acc.mean.size());
    double n = static_cast<double>(acc.n);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double var = acc.n > 1 ? acc.m2[k] / (n - 1.0) : 0.0;
        out[k] = {acc.mean[k], std::sqrt(std::max(var, 0.0) / n), acc.n, rejected};
    }
    return out;
}

}  // namespace

std::vector<SphericalMean> integrate(const Integrand& f, std::size_t width, double r, const IntegratorConfig& cfg) {
    cfg.validate();
    SphereSampler sampler(r, cfg.seed, cfg.stream);
    const std::size_t units = unit_count(cfg);
    const std::size_t K = SphereSampler::kChunkSize;
    const long chunks = static_cast<long>((units + K - 1) / K);
    std::vector<ChunkResult> res(static_cast<std::size_t>(chunks), ChunkResult{Welford(width), 0});
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < chunks; ++c) {
        try {
            std::size_t begin = static_cast<std::size_t>(c) * K;
            std::size_t n = std::min(K, units - begin);
            ChunkResult& cr = res[static_cast<std::size_t>(c)];
            cr.rejected = run_chunk(f, width, sampler, cfg, static_cast<std::uint64_t>(c), n,
                                    [&](const double* x) { cr.acc.add(x); });
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    Welford total(width);
    std::size_t rejected = 0;
    for (const auto& cr : res) {
        total.merge(cr.acc);
        rejected += cr.rejected;
    }
    return finish(total, rejected, cfg);
}

std::vector<SphericalMean> integrate_serial(const Integrand& f, std::size_t width, double r,
                                            const IntegratorConfig& cfg) {
    cfg.validate();
    SphereSampler sampler(r, cfg.seed, cfg.stream);
    const std::size_t units = unit_count(cfg);
    const std::size_t K = SphereSampler::kChunkSize;
    Welford total(width);
    std::size_t rejected = 0;
    for (std::size_t begin = 0, c = 0; begin < units; begin += K, ++c)
        rejected += run_chunk(f, width, sampler, cfg, c, std::min(K, units - begin),
                              [&](const double* x) { total.add(x); });
    return finish(total, rejected, cfg);
}

SphericalMean mean_log_abs(const std::function<double(const Quaternion&)>& abs_f, int degree, double r,
                           const IntegratorConfig& cfg) {
    double tol = rejection_threshold(cfg, r, degree);
    Integrand g = [&](const Quaternion& w, double* out) {
        double a = abs_f(w);
        if (!(a >= tol)) return false;
        out[0] = std::log(a);
        return true;
    };
    return integrate(g, 1, r, cfg)[0];
}

SphericalMean mean_log_abs(const SemiregularRational& f, double r, const IntegratorConfig& cfg) {
    return mean_log_abs([&](const Quaternion& w) { return f.abs_at(w); }, f.scale_degree(), r, cfg);
}

std::pair<SphericalMean, SphericalMean> paired_reflection_mean(const SemiregularRational& f, double r,
                                                               const IntegratorConfig& cfg) {
    double tol = rejection_threshold(cfg, r, f.scale_degree());
    Integrand g = [&](const Quaternion& w, double* out) {
        double a = f.abs_at(w), b = f.abs_at(conj(w));
        if (!(a >= tol) || !(b >= tol)) return false;
        out[0] = std::log(a);
        out[1] = std::log(b);
        return true;
    };
    auto m = integrate(g, 2, r, cfg);
    return {m[0], m[1]};
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double WeilFunction::operator()(const Quaternion& q) const {
    double v = singularity ? log_plus(1.0 / norm(q - *singularity)) : log_plus(norm(q));
    if (kind == Kind::Custom && offset) v += offset(q);
    return v;
}

double WeilFunction::at_infinity() const { return singularity ? 0.0 : INFINITY; }

SphericalMean mean_weil(const SemiregularRational& f, const WeilFunction& weil, double r,
                        const IntegratorConfig& cfg) {
    Integrand g = [&](const Quaternion& w, double* out) {
        if (f.near_pole(w)) {
            if (weil.singularity) {
                out[0] = weil.at_infinity();
                return true;
            }
            return false;
        }
        out[0] = weil(f(w));
        return true;
    };
    return integrate(g, 1, r, cfg)[0];
}

}  // namespace qnev
