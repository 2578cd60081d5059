#pragma once

#include <array>
#include <string>
#include <vector>

#include "bifcur/moebius.hpp"
#include "bifcur/words.hpp"

namespace bifcur {

// Polynomial in the parameter, coefficients in ascending degree.
class PolyC {
  public:
    PolyC() = default;
    PolyC(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }
    explicit PolyC(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static PolyC constant(Complex c) { return PolyC({c}); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Complex eval(Complex lambda) const;
    Complex eval_derivative(Complex lambda) const;

    PolyC operator+(const PolyC& other) const;
    PolyC operator-(const PolyC& other) const;
    PolyC operator*(const PolyC& other) const;

  private:
    void trim();
    std::vector<Complex> coeffs_;
};

// First-order jet in the parameter: value and d/dlambda, dual-number style.
struct Jet1 {
    Complex value{0.0};
    Complex deriv{0.0};

    Jet1() = default;
    Jet1(Complex v, Complex d) : value(v), deriv(d) {}
    static Jet1 constant(Complex v) { return Jet1(v, 0.0); }

    Jet1 operator+(const Jet1& o) const { return {value + o.value, deriv + o.deriv}; }
    Jet1 operator-(const Jet1& o) const { return {value - o.value, deriv - o.deriv}; }
    Jet1 operator*(const Jet1& o) const {
        return {value * o.value, deriv * o.value + value * o.deriv};
    }
    Jet1 operator-() const { return {-value, -deriv}; }
    Jet1 operator-(Complex c) const { return {value - c, deriv}; }
    Jet1 operator*(double s) const { return {value * s, deriv * s}; }
};

using PolyMatrix = std::array<std::array<PolyC, 2>, 2>;
using JetMatrix = std::array<std::array<Jet1, 2>, 2>;

struct WindowHint {
    Complex center{0.0, 0.0};
    double width = 8.0;
    double height = 8.0;
};

// 2x2 jet matrix with an external log scale, the jet analogue of MoebiusMap.
// The represented matrix function is e^{scale} * entries, with the scale a
// constant of the evaluation (renormalizing constants are numbers, not
// functions of lambda, so the jet stays that of a holomorphic function).
struct ScaledJetMatrix {
    JetMatrix m;
    double log_scale = 0.0;

    Jet1 trace() const { return m[0][0] + m[1][1]; }
    // tr^2 of the represented matrix together with its log scale: the true
    // value is tr_sq() * e^{2 log_scale}.
    Jet1 tr_sq_descaled() const {
        Jet1 t = trace();
        return t * t;
    }
    MoebiusMap value() const {
        return MoebiusMap::from_scaled(m[0][0].value, m[0][1].value, m[1][0].value,
                                       m[1][1].value, log_scale);
    }
};

// Holomorphic family: each generator a 2x2 matrix of polynomials in lambda
// with constant determinant 1.
class FamilySpec {
  public:
    FamilySpec(std::vector<std::string> names, std::vector<PolyMatrix> matrices,
               WindowHint window = {});

    int num_generators() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const PolyMatrix& matrix(int i) const { return matrices_.at(static_cast<std::size_t>(i)); }
    const WindowHint& window() const { return window_; }

    Word parse(const std::string& text) const { return parse_word(text, names_); }

    // Generator images (and inverses) evaluated at a fixed lambda, for fast
    // repeated word evaluation at that parameter.
    struct Images {
        std::vector<MoebiusMap> gen;
        std::vector<MoebiusMap> inv;
        const MoebiusMap& of(const Letter& l) const {
            return l.inverted ? inv[static_cast<std::size_t>(l.index)]
                              : gen[static_cast<std::size_t>(l.index)];
        }
    };
    Images images_at(Complex lambda) const;

    MoebiusMap evaluate(const Word& w, Complex lambda) const;
    static MoebiusMap evaluate(const Images& img, const Word& w);

    ScaledJetMatrix evaluate_jet(const Word& w, Complex lambda) const;

  private:
    std::vector<std::string> names_;
    std::vector<PolyMatrix> matrices_;
    std::vector<PolyMatrix> inverses_;  // exact adjugates (det = 1)
    WindowHint window_;
};

// Presets: "riley" (free group <a,b>, a = [[1,1],[0,1]], b = [[1,0],[lambda,1]])
// and "schottky" (a = diag(s,1/s) and a conjugate of it whose fixed points
// move holomorphically with lambda; ping-pong for s large and lambda near 1).
FamilySpec preset_riley();
FamilySpec preset_schottky(double s);
FamilySpec preset(const std::string& name, double s = 2.0);

}  // namespace bifcur
