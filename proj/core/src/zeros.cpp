#include "bifcur/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bifcur/potential.hpp"

namespace bifcur {

namespace {

constexpr double kGolden = 0.6180339887498949;

// boundary of the box as a closed polyline, n points per side
std::vector<Complex> boundary_points(const Box& box, int per_side) {
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(per_side) * 4);
    double l = box.left(), r = box.right(), b = box.bottom(), t = box.top();
    for (int k = 0; k < per_side; ++k) {
        double u = static_cast<double>(k) / per_side;
        pts.emplace_back(l + (r - l) * u, b);
    }
    for (int k = 0; k < per_side; ++k) {
        double u = static_cast<double>(k) / per_side;
        pts.emplace_back(r, b + (t - b) * u);
    }
    for (int k = 0; k < per_side; ++k) {
        double u = static_cast<double>(k) / per_side;
        pts.emplace_back(r - (r - l) * u, t);
    }
    for (int k = 0; k < per_side; ++k) {
        double u = static_cast<double>(k) / per_side;
        pts.emplace_back(l, t - (t - b) * u);
    }
    return pts;
}

// winding attempt at fixed sampling density; returns false when the phase
// increment condition fails or a boundary value is (numerically) zero
bool try_winding(const JetFn& f, const Box& box, int per_side, int* winding) {
    std::vector<Complex> pts = boundary_points(box, per_side);
    double total = 0.0;
    Jet1 prev = f(pts[0]);
    if (!(std::abs(prev.value) > 1e-280)) return false;
    Jet1 first = prev;
    Complex prev_pt = pts[0];
    for (std::size_t k = 1; k <= pts.size(); ++k) {
        Jet1 cur = (k == pts.size()) ? first : f(pts[k]);
        if (k < pts.size() && !(std::abs(cur.value) > 1e-280)) return false;
        Complex cur_pt = pts[k == pts.size() ? 0 : k];
        // first-order phase-rate bound: a multiple zero within one sample
        // spacing of the boundary can rotate the phase a full turn between
        // samples without ever tripping the increment check below
        double sp = std::abs(cur_pt - prev_pt);
        if (!(std::abs(prev.value) > 0.5 * sp * std::abs(prev.deriv))) return false;
        double inc = std::arg(cur.value / prev.value);
        if (std::abs(inc) >= 0.5 * std::numbers::pi) return false;
        total += inc;
        prev = cur;
        prev_pt = cur_pt;
    }
    *winding = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    return true;
}

PointCloud& append(PointCloud& cloud, Complex z, int mult, double residual) {
    cloud.push_back({z, mult, residual});
    return cloud;
}

struct Locator {
    const JetFn& f;
    LocateOptions opt;
    double cluster_threshold = 0.0;

    // Newton polish from z0; returns true on success
    bool polish(Complex z0, Complex* root, double* residual) const {
        Complex z = z0;
        for (int it = 0; it < opt.max_newton_iters; ++it) {
            Jet1 j = f(z);
            if (!(std::abs(j.deriv) > 0.0)) return false;
            Complex step = j.value / j.deriv;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
            z -= step;
            // position tolerance: a small residual alone is not enough, it
            // holds on a whole disk around any multiple zero
            if (std::abs(step) <= opt.tol) {
                *root = z;
                *residual = std::abs(f(z).value);
                return true;
            }
        }
        return false;
    }

    void recurse(const Box& box, int count, PointCloud& out, int depth) const {
        if (count <= 0) return;
        if (box.diameter() < cluster_threshold || depth > 60) {
            double res = std::abs(f(box.center).value);
            append(out, box.center, count, res);
            return;
        }
        if (count == 1) {
            Complex root;
            double res;
            // accept only a root inside this box (tiny slack for boundary
            // jitter): escaping into a neighbor's basin duplicates that root
            if (polish(box.center, &root, &res) &&
                std::abs(root.real() - box.center.real()) <=
                    box.half_width + cluster_threshold &&
                std::abs(root.imag() - box.center.imag()) <=
                    box.half_height + cluster_threshold) {
                append(out, root, 1, res);
                return;
            }
            // Newton stalled: subdivide toward the zero; at the cluster
            // threshold the center is reported with its residual
        }
        split(box, count, out, depth);
    }

    void split(const Box& box, int parent_count, PointCloud& out, int depth) const {
        for (int attempt = 0; attempt < 12; ++attempt) {
            double fx = 0.5, fy = 0.5;
            if (attempt > 0) {
                double off = kGolden * std::pow(0.5, attempt + 2);
                fx = 0.5 + ((attempt % 2) ? off : -off);
                fy = 0.5 + ((attempt % 3 == 1) ? -off : off);
            }
            double sx = box.left() + 2.0 * box.half_width * fx;
            double sy = box.bottom() + 2.0 * box.half_height * fy;
            std::array<Box, 4> kids;
            kids[0] = {Complex(0.5 * (box.left() + sx), 0.5 * (box.bottom() + sy)),
                       0.5 * (sx - box.left()), 0.5 * (sy - box.bottom())};
            kids[1] = {Complex(0.5 * (sx + box.right()), 0.5 * (box.bottom() + sy)),
                       0.5 * (box.right() - sx), 0.5 * (sy - box.bottom())};
            kids[2] = {Complex(0.5 * (box.left() + sx), 0.5 * (sy + box.top())),
                       0.5 * (sx - box.left()), 0.5 * (box.top() - sy)};
            kids[3] = {Complex(0.5 * (sx + box.right()), 0.5 * (sy + box.top())),
                       0.5 * (box.right() - sx), 0.5 * (box.top() - sy)};
            std::array<int, 4> counts{};
            bool ok = true;
            int sum = 0;
            try {
                for (int k = 0; k < 4; ++k) {
                    counts[static_cast<std::size_t>(k)] =
                        count_inner(f, kids[static_cast<std::size_t>(k)]);
                    sum += counts[static_cast<std::size_t>(k)];
                }
            } catch (const BoundaryZeroError&) {
                ok = false;  // a zero sits on this split line; move it
            }
            if (ok && sum != parent_count) ok = false;
            if (!ok) continue;
            for (int k = 0; k < 4; ++k)
                recurse(kids[static_cast<std::size_t>(k)],
                        counts[static_cast<std::size_t>(k)], out, depth + 1);
            return;
        }
        // every split line is dirty: near a multiple zero the function value
        // drops below the evaluation roundoff well before the cluster
        // threshold, so boxes close to that scale are reported as clusters
        if (box.diameter() < 64.0 * cluster_threshold) {
            append(out, box.center, parent_count, std::abs(f(box.center).value));
            return;
        }
        throw BoundaryZeroError();
    }

    static int count_inner(const JetFn& f, const Box& box) {
        // refinement only; jiggling is handled by the caller's split retries
        for (int per_side = 64; per_side <= (1 << 14); per_side *= 2) {
            int w = 0;
            if (try_winding(f, box, per_side, &w)) return w;
        }
        throw BoundaryZeroError();
    }
};

}  // namespace

namespace {

// Counts zeros, expanding the box slightly when its boundary is dirty; the
// box actually counted is written back so callers can keep working with it.
int count_zeros_jiggled(const JetFn& f, Box* box) {
    // expansion jiggle: zeros are isolated, so almost every slightly larger
    // box has a clean boundary
    for (int attempt = 0; attempt < 12; ++attempt) {
        Box b = *box;
        if (attempt > 0) {
            double s = 1.0 + kGolden * std::pow(0.5, attempt);
            b.half_width *= s;
            b.half_height *= s;
        }
        for (int per_side = 64; per_side <= (1 << 14); per_side *= 2) {
            int w = 0;
            if (try_winding(f, b, per_side, &w)) {
                *box = b;
                return w;
            }
        }
    }
    throw BoundaryZeroError();
}

}  // namespace

int count_zeros_box(const JetFn& f, const Box& box) {
    Box b = box;
    return count_zeros_jiggled(f, &b);
}

PointCloud locate_zeros(const JetFn& f, const Box& box, const LocateOptions& opt) {
    Locator loc{f, opt, opt.cluster_fraction * box.diameter()};
    Box b = box;
    int count = count_zeros_jiggled(f, &b);
    PointCloud out;
    loc.recurse(b, count, out, 0);
    // merge points closer than the cluster threshold: a zero sitting on a
    // split line can be reached along several branches of the recursion
    PointCloud merged;
    for (const LocatedZero& z : out) {
        bool absorbed = false;
        for (LocatedZero& m : merged) {
            if (std::abs(z.lambda - m.lambda) <= loc.cluster_threshold) {
                if (z.residual < m.residual) m.lambda = z.lambda;
                m.multiplicity += z.multiplicity;
                m.residual = std::max(m.residual, z.residual);
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(z);
    }
    out = std::move(merged);
    std::sort(out.begin(), out.end(), [](const LocatedZero& a, const LocatedZero& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    return out;
}

PointCloud locate_zeros(const JetFn& f, const Box& box, double tol) {
    LocateOptions opt;
    opt.tol = tol;
    return locate_zeros(f, box, opt);
}

JetFn trace_jet_fn(const FamilySpec& spec, const Word& w, Complex t) {
    return [&spec, w, t](Complex lambda) -> Jet1 {
        ScaledJetMatrix j = spec.evaluate_jet(w, lambda);
        Jet1 t2 = j.tr_sq_descaled();
        double s = 2.0 * j.log_scale;
        double la = std::abs(t2.value);
        if (la > 0.0 && s + std::log(la) > 700.0) throw OverflowError();
        double es = std::exp(s);
        if (!std::isfinite(es)) throw OverflowError();
        return Jet1(t2.value * es - t, t2.deriv * es);
    };
}

JetFn commutator_jet_fn(const FamilySpec& spec, const Word& w, const Word& h) {
    return [&spec, w, h](Complex lambda) -> Jet1 {
        ScaledJetMatrix jw = spec.evaluate_jet(w, lambda);
        ScaledJetMatrix jh = spec.evaluate_jet(h, lambda);
        auto mul = [](const JetMatrix& p, const JetMatrix& q) {
            JetMatrix r;
            for (int i = 0; i < 2; ++i)
                for (int c = 0; c < 2; ++c)
                    r[i][c] = p[i][0] * q[0][c] + p[i][1] * q[1][c];
            return r;
        };
        auto adj = [](const JetMatrix& p) {
            JetMatrix r;
            r[0][0] = p[1][1];
            r[0][1] = -p[0][1];
            r[1][0] = -p[1][0];
            r[1][1] = p[0][0];
            return r;
        };
        JetMatrix k = mul(mul(jw.m, jh.m), mul(adj(jw.m), adj(jh.m)));
        Jet1 tr = k[0][0] + k[1][1];
        double s = 2.0 * (jw.log_scale + jh.log_scale);
        double la = std::abs(tr.value);
        if (la > 0.0 && s + std::log(la) > 700.0) throw OverflowError();
        double es = std::exp(s);
        if (!std::isfinite(es)) throw OverflowError();
        return Jet1(tr.value * es - 2.0, tr.deriv * es);
    };
}

PointCloud trace_locus(const FamilySpec& spec, const Word& w, Complex t,
                       const Box& box, double tol) {
    if (trace_is_constant(spec, w, box.center, 2.0 * box.half_width,
                          2.0 * box.half_height))
        return {};
    return locate_zeros(trace_jet_fn(spec, w, t), box, tol);
}

PointCloud collision_locus(const FamilySpec& spec, const Word& w, const Word& h,
                           const Box& box, double tol) {
    if (commutator_is_degenerate(spec, w, h, box.center, 2.0 * box.half_width,
                                 2.0 * box.half_height))
        return {};
    return locate_zeros(commutator_jet_fn(spec, w, h), box, tol);
}

}  // namespace bifcur
