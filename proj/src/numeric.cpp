#include "rjv/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rjv/errors.hpp"

namespace rjv::num {

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target) {
    if (!(lo <= hi)) throw InvalidInputError("bisect: empty bracket");
    while (hi - lo > kThetaTol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                double fb, double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, flm);
    double right = simpson(f, m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(f, a, fa, b, fb, fm);
    double tol = kQuadRelTol * std::max(1.0, std::abs(whole));
    return adaptive(f, a, fa, b, fb, fm, whole, tol, 52);
}

std::string format_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_sig12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_sig12(x).c_str(), nullptr);
}

} // namespace rjv::num
