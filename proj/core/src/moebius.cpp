#include "bifcur/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bifcur {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs4(Complex a, Complex b, Complex c, Complex d) {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
}

}  // namespace

RiemannPoint::RiemannPoint(Complex x, Complex y) : x_(x), y_(y) {
    double n = std::sqrt(std::norm(x_) + std::norm(y_));
    if (n == 0.0) throw Error("RiemannPoint: zero homogeneous pair");
    x_ /= n;
    y_ /= n;
}

RiemannPoint RiemannPoint::from_affine(Complex z) {
    double m = std::abs(z);
    if (m > 1e154) return infinity();
    return RiemannPoint(z, 1.0);
}

double chordal_distance(const RiemannPoint& p, const RiemannPoint& q) {
    return 2.0 * std::abs(p.x_ * q.y_ - q.x_ * p.y_);
}

bool projectively_equal(const RiemannPoint& p, const RiemannPoint& q, double tol) {
    return std::abs(p.x() * q.y() - q.x() * p.y()) <= tol;
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d), log_scale_(0.0) {
    renormalize();
}

MoebiusMap MoebiusMap::from_scaled(Complex a, Complex b, Complex c, Complex d,
                                   double log_scale) {
    MoebiusMap m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    m.log_scale_ = log_scale;
    m.renormalize();
    return m;
}

void MoebiusMap::renormalize() {
    double m = max_abs4(a_, b_, c_, d_);
    if (!(m > 0.0) || !std::isfinite(m))
        throw Error("MoebiusMap: degenerate entries");
    a_ /= m;
    b_ /= m;
    c_ /= m;
    d_ /= m;
    log_scale_ += std::log(m);
}

MoebiusMap MoebiusMap::inverse() const {
    // adjugate; the det-1 representative satisfies A^-1 = adj(A)
    return from_scaled(d_, -b_, -c_, a_, log_scale_);
}

MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n) {
    return MoebiusMap::from_scaled(
        m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
        m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_,
        m.log_scale_ + n.log_scale_);
}

RiemannPoint MoebiusMap::apply(const RiemannPoint& z) const {
    return RiemannPoint(a_ * z.x() + b_ * z.y(), c_ * z.x() + d_ * z.y());
}

Complex MoebiusMap::tr_squared() const {
    Complex t = a_ + d_;
    double lt = trace_log_abs();
    if (lt == -kInf) return 0.0;
    Complex phase = t / std::abs(t);
    return phase * phase * std::exp(2.0 * lt);
}

double MoebiusMap::trace_log_abs() const {
    double at = std::abs(a_ + d_);
    if (at == 0.0) return -kInf;
    return log_scale_ + std::log(at);
}

double MoebiusMap::op_norm_log() const {
    double frob2 = std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
    double log_n = 2.0 * log_scale_ + std::log(frob2);  // squared Frobenius norm
    // sigma^2 = (N + sqrt(N^2-4))/2; N >= 2 since det = 1
    double x = (log_n > 350.0) ? 0.0 : 4.0 * std::exp(-2.0 * log_n);
    x = std::min(x, 1.0);
    double log_sigma2 = log_n + std::log1p(std::sqrt(1.0 - x)) - std::log(2.0);
    return std::max(0.0, 0.5 * log_sigma2);
}

MapType MoebiusMap::classify(double tau_cls) const {
    // identity test: represented matrix within tau of +-I
    if (std::abs(log_scale_) < 2.0) {
        double s = std::exp(log_scale_);
        Complex ra = a_ * s, rb = b_ * s, rc = c_ * s, rd = d_ * s;
        double sign = (ra.real() + rd.real() >= 0.0) ? 1.0 : -1.0;
        double dev = max_abs4(ra - sign, rb, rc, rd - sign);
        if (dev <= tau_cls) return MapType::Identity;
    }
    double lt = trace_log_abs();
    if (2.0 * lt > 80.0) return MapType::Loxodromic;  // |tr^2| astronomically large
    Complex t2 = tr_squared();
    double tau = tau_cls * std::max(1.0, std::abs(t2));
    if (std::abs(t2 - 4.0) <= tau) return MapType::Parabolic;
    if (std::abs(t2.imag()) <= tau && t2.real() >= -tau && t2.real() < 4.0)
        return MapType::Elliptic;
    return MapType::Loxodromic;
}

std::pair<RiemannPoint, RiemannPoint> MoebiusMap::fixed_points(double tau_cls) const {
    if (classify(tau_cls) == MapType::Identity) throw IdentityMapError();
    // Eigen-directions of the (descaled) matrix; the projective fixed points
    // do not depend on the scale. det(E) = e^{-2 log_scale}.
    Complex tr = a_ + d_;
    Complex det = a_ * d_ - b_ * c_;
    Complex disc = tr * tr - 4.0 * det;
    Complex sq = std::sqrt(disc);
    // branch aligned with tr to avoid cancellation in the dominant eigenvalue
    if (tr.real() * sq.real() + tr.imag() * sq.imag() < 0.0) sq = -sq;
    Complex l1 = 0.5 * (tr + sq);
    Complex l2 = 0.5 * (tr - sq);

    auto eigendir = [&](Complex lam) {
        // candidates (b, lam-a) and (lam-d, c); pick the better conditioned
        Complex u1 = b_, v1 = lam - a_;
        Complex u2 = lam - d_, v2 = c_;
        double n1 = std::norm(u1) + std::norm(v1);
        double n2 = std::norm(u2) + std::norm(v2);
        if (n1 >= n2) return RiemannPoint(u1, v1);
        return RiemannPoint(u2, v2);
    };

    if (std::abs(sq) <= 1e-14 * std::max(1.0, std::abs(tr))) {
        // parabolic: double fixed point
        RiemannPoint p = eigendir(0.5 * tr);
        return {p, p};
    }
    return {eigendir(l1), eigendir(l2)};
}

double MoebiusMap::delta(double tau_cls) const {
    auto [p, q] = fixed_points(tau_cls);
    return chordal_distance(p, q);
}

bool MoebiusMap::approx_equal(const MoebiusMap& other, double tol) const {
    double dls = log_scale_ - other.log_scale_;
    if (std::abs(dls) > 5.0) return false;
    double f = std::exp(dls);
    Complex m[4] = {a_ * f, b_ * f, c_ * f, d_ * f};
    Complex n[4] = {other.a_, other.b_, other.c_, other.d_};
    // largest entry of n fixes the sign
    int k = 0;
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
        double v = std::abs(n[i]);
        if (v > best) { best = v; k = i; }
    }
    if (best == 0.0) return false;
    Complex r = m[k] / n[k];
    if (std::abs(std::abs(r) - 1.0) > tol) return false;
    double sign = (r.real() >= 0.0) ? 1.0 : -1.0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(m[i] - sign * n[i]) > tol * std::max(1.0, best)) return false;
    return true;
}

Complex commutator_trace(const MoebiusMap& m, const MoebiusMap& n) {
    // tr(M N M^-1 N^-1) with det-1 representatives. In descaled entries the
    // scale factors of M and M^-1 (resp. N) cancel against the determinants,
    // so the product of the four descaled matrices times e^{2(lsM+lsN)} is the
    // true commutator (det 1).
    Complex ma = m.a(), mb = m.b(), mc = m.c(), md = m.d();
    Complex na = n.a(), nb = n.b(), nc = n.c(), nd = n.d();
    // P = M*N
    Complex pa = ma * na + mb * nc, pb = ma * nb + mb * nd;
    Complex pc = mc * na + md * nc, pd = mc * nb + md * nd;
    // Q = adj(M)*adj(N) = adj(N*M)
    Complex ra = na * ma + nb * mc, rb = na * mb + nb * md;
    Complex rc = nc * ma + nd * mc, rd = nc * mb + nd * md;
    Complex qa = rd, qb = -rb, qc = -rc, qd = ra;
    Complex trk = pa * qa + pb * qc + pc * qb + pd * qd;
    double s = 2.0 * (m.log_scale() + n.log_scale());
    if (std::abs(trk) == 0.0) return 0.0;
    double lt = s + std::log(std::abs(trk));
    Complex phase = trk / std::abs(trk);
    return phase * std::exp(lt);
}

double commutator_trace_minus2_log(const MoebiusMap& m, const MoebiusMap& n) {
    Complex t = commutator_trace(m, n);
    if (std::isfinite(t.real()) && std::isfinite(t.imag())) {
        double v = std::abs(t - 2.0);
        return (v == 0.0) ? -kInf : std::log(v);
    }
    // astronomically large trace: |tr - 2| ~ |tr|
    Complex ma = m.a(), mb = m.b(), mc = m.c(), md = m.d();
    Complex na = n.a(), nb = n.b(), nc = n.c(), nd = n.d();
    Complex pa = ma * na + mb * nc, pb = ma * nb + mb * nd;
    Complex pc = mc * na + md * nc, pd = mc * nb + md * nd;
    Complex ra = na * ma + nb * mc, rb = na * mb + nb * md;
    Complex rc = nc * ma + nd * mc, rd = nc * mb + nd * md;
    Complex trk = pa * rd - pb * rc - pc * rb + pd * ra;
    double s = 2.0 * (m.log_scale() + n.log_scale());
    if (std::abs(trk) == 0.0) return -kInf;
    return s + std::log(std::abs(trk));
}

namespace {

double adaptive_simpson(double (*f)(double, double), double p, double a, double b,
                        double fa, double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm, p), frm = f(rm, p);
    double h = b - a;
    double whole = h / 6.0 * (fa + 4.0 * fm + fb);
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson(f, p, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, p, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

// 0.5 * log(u + eps*(1-u)) with eps = e^{-4 log sigma}
double ilogn_integrand(double u, double eps) {
    return 0.5 * std::log(u + eps * (1.0 - u));
}

}  // namespace

double integrated_log_norm(const MoebiusMap& m) {
    double ls = m.op_norm_log();
    if (ls <= 0.0) return 0.0;
    double eps = (ls > 170.0) ? 0.0 : std::exp(-4.0 * ls);
    double fa = ilogn_integrand(1e-300, eps);  // guarded endpoint (eps may be 0)
    if (eps == 0.0) fa = 0.5 * std::log(1e-300);
    double fm = ilogn_integrand(0.5, eps);
    double fb = ilogn_integrand(1.0, eps);
    double integral =
        adaptive_simpson(ilogn_integrand, eps, 1e-300, 1.0, fa, fm, fb, 1e-9, 60);
    return ls + integral;
}

}  // namespace bifcur
