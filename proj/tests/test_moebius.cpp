#include <cmath>
#include <doctest.h>

#include "bifcur/moebius.hpp"
#include "bifcur/rng.hpp"

using namespace bifcur;

namespace {

MoebiusMap random_map(CounterRng& rng) {
    // random a,b,c with d solved from det = 1
    Complex a(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    Complex b(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    Complex c(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    if (std::abs(a) < 0.1) a += 0.5;
    Complex d = (1.0 + b * c) / a;
    return MoebiusMap(a, b, c, d);
}

}  // namespace

TEST_CASE("chordal distance basics") {
    RiemannPoint zero = RiemannPoint::from_affine(0.0);
    RiemannPoint inf = RiemannPoint::infinity();
    RiemannPoint one = RiemannPoint::from_affine(1.0);
    CHECK(chordal_distance(zero, inf) == doctest::Approx(2.0));
    CHECK(chordal_distance(zero, zero) == doctest::Approx(0.0));
    // |0 - 1| = 1, lifts (0,1) and (1,1)/sqrt 2: 2 * 1 / sqrt 2 = sqrt 2
    CHECK(chordal_distance(zero, one) == doctest::Approx(std::sqrt(2.0)));
    // symmetry and triangle inequality on random triples
    CounterRng rng(42, 0);
    for (int k = 0; k < 200; ++k) {
        RiemannPoint p(Complex(rng.uniform() - 0.5, rng.uniform() - 0.5),
                       Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
        RiemannPoint q(Complex(rng.uniform() - 0.5, rng.uniform() - 0.5),
                       Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
        RiemannPoint r(Complex(rng.uniform() - 0.5, rng.uniform() - 0.5),
                       Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
        double pq = chordal_distance(p, q);
        CHECK(pq == doctest::Approx(chordal_distance(q, p)));
        CHECK(pq <= 2.0 + 1e-12);
        CHECK(pq <= chordal_distance(p, r) + chordal_distance(r, q) + 1e-12);
    }
}

TEST_CASE("chordal distance is scale invariant in the lift") {
    RiemannPoint p(Complex(3.0, -1.0), Complex(0.5, 2.0));
    RiemannPoint q(Complex(-1.0, 0.25), Complex(1.0, 1.0));
    Complex w = std::polar(1.0, 0.7);
    RiemannPoint p2(w * Complex(3.0, -1.0), w * Complex(0.5, 2.0));
    CHECK(chordal_distance(p, q) == doctest::Approx(chordal_distance(p2, q)));
}

TEST_CASE("op_norm_log against the singular value of [[1,1],[0,1]]") {
    // A A^T = [[2,1],[1,1]] has top eigenvalue (3+sqrt 5)/2, so the top
    // singular value is the golden ratio
    MoebiusMap a(1.0, 1.0, 0.0, 1.0);
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(a.op_norm_log() == doctest::Approx(std::log(phi)).epsilon(1e-12));
}

TEST_CASE("op_norm_log of a diagonal map") {
    MoebiusMap d(Complex(5.0, 0.0), 0.0, 0.0, Complex(0.2, 0.0));
    CHECK(d.op_norm_log() == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(MoebiusMap::identity().op_norm_log() == doctest::Approx(0.0));
}

TEST_CASE("op_norm_log properties") {
    CounterRng rng(7, 0);
    for (int k = 0; k < 200; ++k) {
        MoebiusMap m = random_map(rng), n = random_map(rng);
        CHECK(m.op_norm_log() >= -1e-12);  // det 1 forces norm >= 1
        CHECK(m.inverse().op_norm_log() == doctest::Approx(m.op_norm_log()).epsilon(1e-9));
        CHECK(compose(m, n).op_norm_log() <=
              m.op_norm_log() + n.op_norm_log() + 1e-9);
    }
}

TEST_CASE("compose matches matrix product and apply is a homomorphism") {
    MoebiusMap m(Complex(2.0, 1.0), Complex(0.0, 1.0), Complex(1.0, 0.0),
                 Complex(0.4, -0.2) / Complex(2.0, 1.0) + Complex(0, 0));
    // build exactly: pick entries, solve d
    Complex a(2.0, 1.0), b(0.0, 1.0), c(1.0, 0.0);
    Complex d = (1.0 + b * c) / a;
    m = MoebiusMap(a, b, c, d);
    MoebiusMap n(1.0, -2.0, 0.0, 1.0);
    MoebiusMap mn = compose(m, n);
    Complex s = std::exp(mn.log_scale());
    CHECK(std::abs(s * mn.a() - (a * 1.0 + b * 0.0)) < 1e-12);
    CHECK(std::abs(s * mn.b() - (a * -2.0 + b * 1.0)) < 1e-12);
    RiemannPoint z = RiemannPoint::from_affine(Complex(0.3, 0.7));
    RiemannPoint lhs = mn.apply(z);
    RiemannPoint rhs = m.apply(n.apply(z));
    CHECK(chordal_distance(lhs, rhs) < 1e-12);
}

TEST_CASE("long products stay bounded with an accumulating scale") {
    MoebiusMap g(Complex(3.0, 0.0), 1.0, 1.0, Complex(2.0 / 3.0, 0.0));
    MoebiusMap acc;
    for (int i = 0; i < 4000; ++i) acc = compose(g, acc);
    CHECK(std::abs(acc.a()) <= 1.0 + 1e-12);
    CHECK(std::isfinite(acc.log_scale()));
    CHECK(acc.log_scale() > 100.0);
    CHECK(acc.op_norm_log() > 100.0);
    // norm of the product grows at most linearly in log space
    CHECK(acc.op_norm_log() <= 4000.0 * g.op_norm_log() + 1e-6);
}

TEST_CASE("trace_log_abs agrees with tr_squared when safe") {
    CounterRng rng(9, 0);
    for (int k = 0; k < 100; ++k) {
        MoebiusMap m = random_map(rng);
        double lhs = 2.0 * m.trace_log_abs();
        double rhs = std::log(std::abs(m.tr_squared()));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("classification of standard elements") {
    CHECK(MoebiusMap::identity().classify() == MapType::Identity);
    MoebiusMap minus_id(-1.0, 0.0, 0.0, -1.0);
    CHECK(minus_id.classify() == MapType::Identity);  // same PSL element
    MoebiusMap par(1.0, 1.0, 0.0, 1.0);
    CHECK(par.classify() == MapType::Parabolic);
    MoebiusMap lox(2.0, 0.0, 0.0, 0.5);
    CHECK(lox.classify() == MapType::Loxodromic);
    double th = 0.6;
    MoebiusMap ell(std::polar(1.0, th), 0.0, 0.0, std::polar(1.0, -th));
    CHECK(ell.classify() == MapType::Elliptic);
    // complex trace off the segment [0,4] of tr^2 is loxodromic
    MoebiusMap twist(Complex(1.2, 0.4), 0.3, 0.0, 1.0 / Complex(1.2, 0.4));
    CHECK(twist.classify() == MapType::Loxodromic);
}

TEST_CASE("classification is a conjugacy invariant") {
    CounterRng rng(13, 0);
    MoebiusMap lox(3.0, 0.0, 0.0, 1.0 / 3.0);
    MoebiusMap par(1.0, 1.0, 0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        MoebiusMap h = random_map(rng);
        MoebiusMap cl = compose(compose(h, lox), h.inverse());
        MoebiusMap cp = compose(compose(h, par), h.inverse());
        CHECK(cl.classify() == MapType::Loxodromic);
        CHECK(cp.classify() == MapType::Parabolic);
    }
}

TEST_CASE("fixed points of diagonal and parabolic maps") {
    MoebiusMap lox(2.0, 0.0, 0.0, 0.5);
    auto [p, q] = lox.fixed_points();
    // fixed points 0 and infinity in some order
    bool ok = (p.is_infinity() && std::abs(q.affine()) < 1e-12) ||
              (q.is_infinity() && std::abs(p.affine()) < 1e-12);
    CHECK(ok);
    CHECK(lox.delta() == doctest::Approx(2.0));

    MoebiusMap par(1.0, 1.0, 0.0, 1.0);
    auto [u, v] = par.fixed_points();
    CHECK(u.is_infinity());
    CHECK(v.is_infinity());
    CHECK(par.delta() == doctest::Approx(0.0));

    CHECK_THROWS_AS(MoebiusMap::identity().fixed_points(), IdentityMapError);
}

TEST_CASE("fixed points really are fixed") {
    CounterRng rng(17, 0);
    int tested = 0;
    for (int k = 0; k < 200; ++k) {
        MoebiusMap m = random_map(rng);
        if (m.is_identity()) continue;
        auto [p, q] = m.fixed_points();
        CHECK(chordal_distance(m.apply(p), p) < 1e-7);
        CHECK(chordal_distance(m.apply(q), q) < 1e-7);
        ++tested;
    }
    CHECK(tested > 150);
}

TEST_CASE("delta is invariant under inversion and conjugation-equivariant") {
    CounterRng rng(23, 0);
    for (int k = 0; k < 100; ++k) {
        MoebiusMap m = random_map(rng);
        if (m.is_identity() || m.classify() == MapType::Parabolic) continue;
        CHECK(m.delta() == doctest::Approx(m.inverse().delta()).epsilon(1e-7));
    }
}

TEST_CASE("commutator trace detects shared fixed points") {
    // both upper triangular: common fixed point at infinity
    MoebiusMap m(2.0, 1.0, 0.0, 0.5);
    MoebiusMap n(1.0, 3.0, 0.0, 1.0);
    CHECK(std::abs(commutator_trace(m, n) - 2.0) < 1e-12);
    CHECK(commutator_trace_minus2_log(m, n) < -20.0);

    // a = [[1,1],[0,1]], b = [[1,0],[t,1]]: tr [a,b] = 2 + t^2
    for (Complex t : {Complex(0.5, 0.0), Complex(-1.0, 2.0), Complex(0.0, 3.0)}) {
        MoebiusMap a(1.0, 1.0, 0.0, 1.0);
        MoebiusMap b(1.0, 0.0, t, 1.0);
        Complex tr = commutator_trace(a, b);
        CHECK(std::abs(tr - (2.0 + t * t)) < 1e-10);
        CHECK(commutator_trace_minus2_log(a, b) ==
              doctest::Approx(std::log(std::abs(t * t))).epsilon(1e-9));
    }
}

TEST_CASE("commutator trace is symmetric and conjugation invariant") {
    CounterRng rng(29, 0);
    for (int k = 0; k < 50; ++k) {
        MoebiusMap m = random_map(rng), n = random_map(rng), h = random_map(rng);
        Complex t1 = commutator_trace(m, n);
        Complex t2 = commutator_trace(n, m);
        CHECK(std::abs(t1 - t2) < 1e-8 * std::max(1.0, std::abs(t1)));
        Complex t3 = commutator_trace(compose(compose(h, m), h.inverse()),
                                      compose(compose(h, n), h.inverse()));
        CHECK(std::abs(t1 - t3) < 1e-6 * std::max(1.0, std::abs(t1)));
    }
}

TEST_CASE("integrated_log_norm closed form for diagonal maps") {
    // int_0^1 (1/2) log(a u + b (1-u)) du = ((a log a - b log b)/(a-b) - 1)/2
    for (double sigma : {1.5, 3.0, 10.0}) {
        double a = sigma * sigma, b = 1.0 / (sigma * sigma);
        double exact = 0.5 * ((a * std::log(a) - b * std::log(b)) / (a - b) - 1.0);
        MoebiusMap m(sigma, 0.0, 0.0, 1.0 / sigma);
        CHECK(integrated_log_norm(m) == doctest::Approx(exact).epsilon(1e-8));
    }
    CHECK(integrated_log_norm(MoebiusMap::identity()) == doctest::Approx(0.0));
}

TEST_CASE("integrated_log_norm depends only on the singular values") {
    MoebiusMap d(4.0, 0.0, 0.0, 0.25);
    // rotate: same singular values
    double th = 1.1;
    MoebiusMap r(std::polar(1.0, th), 0.0, 0.0, std::polar(1.0, -th));
    MoebiusMap m = compose(r, d);
    CHECK(integrated_log_norm(m) == doctest::Approx(integrated_log_norm(d)).epsilon(1e-8));
}

TEST_CASE("integrated_log_norm bounded by the operator norm") {
    CounterRng rng(31, 0);
    for (int k = 0; k < 50; ++k) {
        MoebiusMap m = random_map(rng);
        double v = integrated_log_norm(m);
        CHECK(v >= -1e-9);
        CHECK(v <= m.op_norm_log() + 1e-9);
    }
}

TEST_CASE("approx_equal handles the sign quotient") {
    MoebiusMap m(Complex(1.2, 0.1), 0.5, 0.25, (1.0 + 0.5 * 0.25) / Complex(1.2, 0.1));
    MoebiusMap neg(-m.a() * std::exp(m.log_scale()), -m.b() * std::exp(m.log_scale()),
                   -m.c() * std::exp(m.log_scale()), -m.d() * std::exp(m.log_scale()));
    CHECK(m.approx_equal(neg));
    CHECK_FALSE(m.approx_equal(MoebiusMap::identity()));
}
