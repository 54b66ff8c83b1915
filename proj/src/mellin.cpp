#include "bttn/specfun.hpp"
#include "quad_internal.hpp"

#include <cmath>
#include <complex>
#include <vector>

// Mellin-Barnes evaluation of the two transform kernels behind the error
// rate and capacity expressions.  Both are integrals of gamma-function
// products along a vertical line in the complex plane; the line is placed
// per call where the t = 0 magnitude is smallest, which keeps the
// integrand scaled to the answer and avoids cancellation blow-ups in
// double precision.

namespace bttn {
namespace specfun {
namespace {

// Lanczos log-gamma for complex arguments with positive real part.  Any
// 2*pi*i ambiguity in the imaginary part is harmless here because results
// only ever appear inside exp() of a sum of these.
std::complex<double> clgamma(std::complex<double> z)
{
    static const double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const std::complex<double> zm1 = z - 1.0;
    std::complex<double> a = c[0];
    for (int i = 1; i < 9; ++i)
        a += c[i] / (zm1 + static_cast<double>(i));
    const std::complex<double> t = zm1 + 7.5;
    return 0.91893853320467274178 + (zm1 + 0.5) * std::log(t) - t + std::log(a);
}

// golden-section minimum of a convex function on [lo, hi]
template <typename F>
double golden_min(F g, double lo, double hi)
{
    const double invphi = 0.61803398874989484820;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < 200 && (b - a) > 1e-11 * (std::fabs(a) + std::fabs(b) + 1.0); ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

// shared driver: integrate Re[sign * exp(lnmag(s)) / s] over t in [0, T]
// where s = c + i t, with T found by scanning for a 42 e-fold drop of the
// (monotone decreasing) integrand magnitude.
template <typename LnKernel>
double contour_integral(double c, double cap, double h, double lm0,
                        LnKernel lnk, double sign)
{
    auto lm = [&](double t) {
        const std::complex<double> s(c, t);
        return lnk(s).real() - std::log(std::abs(s));
    };
    double T = 1.0;
    while (lm(T) > lm0 - 42.0 && T < cap)
        T *= 1.4;
    T = std::min(T, cap);

    auto f = [&](double t) -> double {
        const std::complex<double> s(c, t);
        const std::complex<double> e = lnk(s);
        if (e.real() < -745.0)
            return 0.0;
        const std::complex<double> v = std::exp(e) / s;
        return sign * v.real();
    };

    std::vector<double> pts;
    for (double t = 0.0; t < T; t += h)
        pts.push_back(t);
    pts.push_back(T);

    QuadSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 0.0;
    qs.max_refinements = 50;
    return detail::adapt(f, pts, qs);
}

} // namespace

double meijer_g_ber(double k, double theta)
{
    if (!(k > 0.0))
        throw std::domain_error("meijer_g_ber: shape must be > 0");
    if (!(theta > 0.0))
        throw std::domain_error("meijer_g_ber: scale must be > 0");

    const double lt = std::log(theta);
    const double lgk = ln_gamma(k);

    // abscissa strictly between the pole groups at s = -k and s = 0
    auto g0 = [&](double c) {
        return ln_gamma(0.5 - c) + ln_gamma(k + c) + c * lt - std::log(-c);
    };
    const double m = 1e-4 * std::min(k, 1.0);
    const double c = golden_min(g0, -k + m, -m);

    auto lnk = [&](std::complex<double> s) {
        return clgamma(0.5 - s) + clgamma(k + s) - lgk + s * lt;
    };
    const double h = std::min(4.0, 12.0 / std::max(1.0, std::fabs(lt)));
    const double raw = contour_integral(c, 4.0 * k + 400.0, h,
                                        g0(c) - lgk, lnk, -1.0);
    return raw / (2.0 * std::pow(M_PI, 1.5));
}

double meijer_g_ac(double k, double theta)
{
    if (!(k > 0.0))
        throw std::domain_error("meijer_g_ac: shape must be > 0");
    if (!(theta > 0.0))
        throw std::domain_error("meijer_g_ac: scale must be > 0");

    const double lt = std::log(theta);
    const double lgk = ln_gamma(k);

    // abscissa between the poles at s = 0 and s = 1
    auto g0 = [&](double c) {
        return ln_gamma(1.0 - c) + ln_gamma(c) + ln_gamma(k + c)
               - std::log(c) + c * lt;
    };
    const double m = 1e-4;
    const double c = golden_min(g0, m, 1.0 - m);

    auto lnk = [&](std::complex<double> s) {
        return clgamma(1.0 - s) + clgamma(s) + clgamma(k + s) - lgk + s * lt;
    };
    const double h = std::min(4.0, 12.0 / std::max(1.0, std::fabs(lt)));
    const double raw = contour_integral(c, 4.0 * k + 400.0, h,
                                        g0(c) - lgk, lnk, 1.0);
    return raw / (M_PI * 0.69314718055994530942);
}

} // namespace specfun
} // namespace bttn
