#include "ntrelax/stability.hpp"

#include "ntrelax/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ntrelax {

namespace {

constexpr double kRegionTol = 1.0 + 1e-12;

double axis_point(double lo, double hi, std::size_t n, std::size_t i) {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

complex phi(complex z1, complex z2) {
    if (z2 == complex(2.0, 0.0)) throw std::domain_error("phi: pole at z2 = 2");
    const complex den = 1.0 - z2 + z2 * z2 / 4.0;
    return (1.0 + z1 * (2.0 + z1) / (2.0 - z2) - z1 * z2 / 4.0) / den;
}

LStabilityReport check_L_stability(const std::vector<complex>& z2_samples) {
    LStabilityReport r;
    double far = -1.0;
    for (const complex& z : z2_samples) {
        const double m = std::abs(phi(0.0, z));
        ++r.n_samples;
        if (m > r.max_magnitude) {
            r.max_magnitude = m;
            r.worst_z2 = z;
        }
        if (std::abs(z) > far) {
            far = std::abs(z);
            r.far_field = m;
        }
    }
    r.max_violation = std::max(0.0, r.max_magnitude - 1.0);
    return r;
}

double RegionAxes::re(std::size_t i) const { return axis_point(re_min, re_max, n_re, i); }
double RegionAxes::im(std::size_t j) const { return axis_point(im_min, im_max, n_im, j); }

std::vector<double> imaginary_axis_samples(double y_max, std::size_t per_decade) {
    constexpr double y_min = 1e-4;
    if (!(y_max > y_min)) throw std::invalid_argument("imaginary_axis_samples: y_max must exceed 1e-4");
    if (per_decade == 0) throw std::invalid_argument("imaginary_axis_samples: per_decade must be positive");
    const double decades = std::log10(y_max / y_min);
    const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1;
    std::vector<double> ys;
    ys.reserve(2 * n + 1);
    ys.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = y_min * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n - 1));
        ys.push_back(y);
        ys.push_back(-y);
    }
    return ys;
}

double max_on_imaginary_axis(complex z1, const std::vector<double>& ys) {
    double m = 0.0;  // limit y -> infinity
    for (double y : ys) m = std::max(m, std::abs(phi(z1, complex(0.0, y))));
    return m;
}

RegionGrid compute_S1(const RegionAxes& axes, double y_max, std::size_t per_decade, unsigned threads) {
    const auto ys = imaginary_axis_samples(y_max, per_decade);
    RegionGrid g{axes, std::vector<unsigned char>(axes.n_re * axes.n_im, 0)};
    const auto work = [&](unsigned worker, unsigned n_workers) {
        for (std::size_t j = worker; j < axes.n_im; j += n_workers) {
            for (std::size_t i = 0; i < axes.n_re; ++i) {
                const complex z1(axes.re(i), axes.im(j));
                bool inside = true;
                for (double y : ys) {
                    if (std::abs(phi(z1, complex(0.0, y))) > kRegionTol) {
                        inside = false;
                        break;
                    }
                }
                g.inside[j * axes.n_re + i] = inside ? 1 : 0;
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
        for (auto& t : pool) t.join();
    }
    return g;
}

RegionGrid compute_phi0_region(const RegionAxes& axes) {
    RegionGrid g{axes, std::vector<unsigned char>(axes.n_re * axes.n_im, 0)};
    for (std::size_t j = 0; j < axes.n_im; ++j) {
        for (std::size_t i = 0; i < axes.n_re; ++i) {
            const complex z2(axes.re(i), axes.im(j));
            const bool inside = z2 != complex(2.0, 0.0) && std::abs(phi(0.0, z2)) <= kRegionTol;
            g.inside[j * axes.n_re + i] = inside ? 1 : 0;
        }
    }
    return g;
}

std::string region_csv(const RegionGrid& region) {
    std::string out = "re,im,inside\n";
    for (std::size_t j = 0; j < region.axes.n_im; ++j)
        for (std::size_t i = 0; i < region.axes.n_re; ++i)
            out += format_real(region.axes.re(i)) + "," + format_real(region.axes.im(j)) + "," +
                   (region.at(i, j) ? "1" : "0") + "\n";
    return out;
}

void export_region_csv(const RegionGrid& region, const std::string& path) {
    write_file_atomic(path, region_csv(region));
}

RegionGrid parse_region_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line.rfind("re,im,inside", 0) != 0)
        throw std::invalid_argument("region csv: missing header re,im,inside");
    std::vector<double> re, im;
    std::vector<unsigned char> flags;
    while (std::getline(ss, line)) {
        if (line.empty() || line == "\r") continue;
        double r = 0, m = 0;
        int f = 0;
        char c1 = 0, c2 = 0;
        std::stringstream ls(line);
        if (!(ls >> r >> c1 >> m >> c2 >> f) || c1 != ',' || c2 != ',' || (f != 0 && f != 1))
            throw std::invalid_argument("region csv: malformed row '" + line + "'");
        re.push_back(r);
        im.push_back(m);
        flags.push_back(static_cast<unsigned char>(f));
    }
    if (flags.empty()) throw std::invalid_argument("region csv: no rows");
    // Rows run with the real part fastest; the real axis repeats until the imaginary part moves.
    std::size_t n_re = 1;
    while (n_re < im.size() && im[n_re] == im[0]) ++n_re;
    if (flags.size() % n_re != 0) throw std::invalid_argument("region csv: ragged grid");
    RegionGrid g;
    g.axes.n_re = n_re;
    g.axes.n_im = flags.size() / n_re;
    g.axes.re_min = re.front();
    g.axes.re_max = re[n_re - 1];
    g.axes.im_min = im.front();
    g.axes.im_max = im.back();
    g.inside = std::move(flags);
    return g;
}

}  // namespace ntrelax
