#include "bifcur/family.hpp"

#include <cmath>

namespace bifcur {

void PolyC::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Complex PolyC::eval(Complex lambda) const {
    Complex acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lambda + *it;
    return acc;
}

Complex PolyC::eval_derivative(Complex lambda) const {
    Complex acc(0.0);
    for (std::size_t k = coeffs_.size(); k-- > 1;)
        acc = acc * lambda + coeffs_[k] * static_cast<double>(k);
    return acc;
}

PolyC PolyC::operator+(const PolyC& other) const {
    std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
    return PolyC(std::move(out));
}

PolyC PolyC::operator-(const PolyC& other) const {
    std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
    return PolyC(std::move(out));
}

PolyC PolyC::operator*(const PolyC& other) const {
    if (coeffs_.empty() || other.coeffs_.empty()) return PolyC();
    std::vector<Complex> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * other.coeffs_[j];
    return PolyC(std::move(out));
}

namespace {

PolyC det_poly(const PolyMatrix& m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

PolyMatrix adjugate(const PolyMatrix& m) {
    return {{{m[1][1], PolyC() - m[0][1]}, {PolyC() - m[1][0], m[0][0]}}};
}

JetMatrix jet_mul(const JetMatrix& p, const JetMatrix& q) {
    JetMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
    return r;
}

}  // namespace

FamilySpec::FamilySpec(std::vector<std::string> names, std::vector<PolyMatrix> matrices,
                       WindowHint window)
    : names_(std::move(names)), matrices_(std::move(matrices)), window_(window) {
    if (names_.empty() || names_.size() != matrices_.size())
        throw ConfigError("FamilySpec: names/matrices mismatch or empty");
    for (const PolyMatrix& m : matrices_) {
        PolyC det = det_poly(m);
        const auto& c = det.coeffs();
        bool ok = !c.empty() && std::abs(c[0] - Complex(1.0)) <= 1e-12;
        for (std::size_t k = 1; ok && k < c.size(); ++k)
            if (std::abs(c[k]) > 1e-12) ok = false;
        if (!ok) throw ConfigError("FamilySpec: generator determinant is not the constant 1");
        inverses_.push_back(adjugate(m));
    }
}

FamilySpec::Images FamilySpec::images_at(Complex lambda) const {
    Images img;
    img.gen.reserve(matrices_.size());
    img.inv.reserve(matrices_.size());
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
        const PolyMatrix& m = matrices_[i];
        const PolyMatrix& a = inverses_[i];
        img.gen.emplace_back(m[0][0].eval(lambda), m[0][1].eval(lambda),
                             m[1][0].eval(lambda), m[1][1].eval(lambda));
        img.inv.emplace_back(a[0][0].eval(lambda), a[0][1].eval(lambda),
                             a[1][0].eval(lambda), a[1][1].eval(lambda));
    }
    return img;
}

MoebiusMap FamilySpec::evaluate(const Images& img, const Word& w) {
    MoebiusMap acc;
    for (const Letter& l : w.letters()) acc = compose(acc, img.of(l));
    return acc;
}

MoebiusMap FamilySpec::evaluate(const Word& w, Complex lambda) const {
    for (const Letter& l : w.letters())
        if (l.index < 0 || l.index >= num_generators())
            throw UnknownGeneratorError(std::to_string(l.index));
    return evaluate(images_at(lambda), w);
}

ScaledJetMatrix FamilySpec::evaluate_jet(const Word& w, Complex lambda) const {
    // generator jets at lambda
    std::vector<JetMatrix> gen(matrices_.size()), inv(matrices_.size());
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                gen[i][r][c] = Jet1(matrices_[i][r][c].eval(lambda),
                                    matrices_[i][r][c].eval_derivative(lambda));
                inv[i][r][c] = Jet1(inverses_[i][r][c].eval(lambda),
                                    inverses_[i][r][c].eval_derivative(lambda));
            }
    }
    ScaledJetMatrix acc;
    acc.m[0][0] = Jet1::constant(1.0);
    acc.m[1][1] = Jet1::constant(1.0);
    for (const Letter& l : w.letters()) {
        if (l.index < 0 || l.index >= num_generators())
            throw UnknownGeneratorError(std::to_string(l.index));
        const JetMatrix& g =
            l.inverted ? inv[static_cast<std::size_t>(l.index)]
                       : gen[static_cast<std::size_t>(l.index)];
        acc.m = jet_mul(acc.m, g);
        // renormalize by a constant so entries stay near unit magnitude
        double mx = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) mx = std::max(mx, std::abs(acc.m[r][c].value));
        if (mx > 0.0) {
            double s = 1.0 / mx;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) acc.m[r][c] = acc.m[r][c] * s;
            acc.log_scale += std::log(mx);
        }
    }
    return acc;
}

FamilySpec preset_riley() {
    PolyC one = PolyC::constant(1.0);
    PolyC zero;
    PolyC lam({0.0, 1.0});
    PolyMatrix a = {{{one, one}, {zero, one}}};
    PolyMatrix b = {{{one, zero}, {lam, one}}};
    WindowHint w{Complex(-3.0, 0.0), 10.0, 10.0};
    return FamilySpec({"a", "b"}, {a, b}, w);
}

FamilySpec preset_schottky(double s) {
    if (!(s > 1.0)) throw ConfigError("preset_schottky: need s > 1");
    PolyC zero;
    // a = diag(s, 1/s); b_lambda = M a M^-1 with M = [[1, lambda],[1, lambda+1]]
    // (det M = 1). b's fixed points are 1 and lambda/(lambda+1), so the pair
    // (a, b) is in ping-pong position for s large and lambda near 1.
    double t = s - 1.0 / s;
    PolyMatrix a = {{{PolyC::constant(s), zero}, {zero, PolyC::constant(1.0 / s)}}};
    PolyMatrix b = {{{PolyC({s, t}), PolyC({0.0, -t})},
                     {PolyC({t, t}), PolyC({1.0 / s, -t})}}};
    WindowHint w{Complex(1.0, 0.0), 0.5, 0.5};
    return FamilySpec({"a", "b"}, {a, b}, w);
}

FamilySpec preset(const std::string& name, double s) {
    if (name == "riley") return preset_riley();
    if (name == "schottky") return preset_schottky(s);
    throw UnknownPresetError(name);
}

}  // namespace bifcur
