#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bifcur/errors.hpp"
#include "bifcur/rng.hpp"

namespace bifcur {

// One symbol of a symmetric generating set: generator index + inverse flag.
struct Letter {
    int index = 0;
    bool inverted = false;

    Letter() = default;
    Letter(int idx, bool inv) : index(idx), inverted(inv) {}

    Letter inverse() const { return Letter(index, !inverted); }
    bool cancels(const Letter& other) const {
        return index == other.index && inverted != other.inverted;
    }
    bool operator==(const Letter& other) const = default;
};

// Freely reduced word; the empty word is the identity.
class Word {
  public:
    Word() = default;
    static Word from_letters(const std::vector<Letter>& letters);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    Word inverse() const;

    bool operator==(const Word& other) const = default;
    // lexicographic; total order for use as a map key
    bool operator<(const Word& other) const;

  private:
    friend Word reduce(const std::vector<Letter>& letters);
    friend Word left_multiply(const Word& w, const Word& step);
    std::vector<Letter> letters_;  // invariant: freely reduced
};

// Stack-based free reduction.
Word reduce(const std::vector<Letter>& letters);

// Reduced concatenation step * w (the walk convention l_n = g_n ... g_1).
Word left_multiply(const Word& w, const Word& step);

// Finitely supported probability measure on the group, as reduced words.
class WordMeasure {
  public:
    // weights must be positive; they are normalized if the sum is within 1%
    // of 1, otherwise rejected.
    WordMeasure(std::vector<Word> atoms, std::vector<double> weights);

    std::size_t size() const { return atoms_.size(); }
    const Word& atom(std::size_t i) const { return atoms_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    // index of the atom at quantile u in [0,1)
    std::size_t pick(double u) const;

    // measure with every atom replaced by its inverse (reflected walk)
    WordMeasure reversed() const;

    static WordMeasure uniform_symmetric(int num_generators);

  private:
    std::vector<Word> atoms_;
    std::vector<double> weights_;
    std::vector<double> cdf_;
};

// Seeded sampler of left random walks l_n = g_n ... g_1 with steps iid ~ mu.
// Identical (seed, stream, call sequence) gives identical output everywhere.
class WalkSampler {
  public:
    WalkSampler(WordMeasure measure, std::uint64_t seed, std::uint64_t stream = 0)
        : measure_(std::move(measure)), rng_(seed, stream) {}

    Word sample_walk(std::size_t n);

    // step indices only (cheaper when the caller evaluates matrices directly)
    std::vector<std::size_t> sample_steps(std::size_t n);

    WalkSampler split(std::uint64_t substream) const {
        WalkSampler s(*this);
        s.rng_ = rng_.split(substream);
        return s;
    }

    const WordMeasure& measure() const { return measure_; }

  private:
    WordMeasure measure_;
    CounterRng rng_;
};

// Exact n-th convolution power as a finite measure on reduced words.
// Throws CapExceeded when |support|^n exceeds the cap.
WordMeasure convolution_enumerate(const WordMeasure& mu, std::size_t n,
                                  std::size_t cap = 1000000);

// Parsing of the config syntax: generator names with a trailing ' for the
// inverse, e.g. "ab'" with names {"a","b"} -> a * b^-1.
Word parse_word(const std::string& text, const std::vector<std::string>& names);
std::string format_word(const Word& w, const std::vector<std::string>& names);

}  // namespace bifcur
