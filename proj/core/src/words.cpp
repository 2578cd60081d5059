#include "bifcur/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace bifcur {

Word Word::from_letters(const std::vector<Letter>& letters) { return reduce(letters); }

Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.push_back(it->inverse());
    Word w;
    w.letters_ = std::move(out);  // reversal of a reduced word is reduced
    return w;
}

bool Word::operator<(const Word& other) const {
    auto key = [](const Letter& l) { return l.index * 2 + (l.inverted ? 1 : 0); };
    return std::lexicographical_compare(
        letters_.begin(), letters_.end(), other.letters_.begin(), other.letters_.end(),
        [&](const Letter& a, const Letter& b) { return key(a) < key(b); });
}

Word reduce(const std::vector<Letter>& letters) {
    Word w;
    auto& out = w.letters_;
    out.reserve(letters.size());
    for (const Letter& l : letters) {
        if (!out.empty() && out.back().cancels(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return w;
}

Word left_multiply(const Word& w, const Word& step) {
    Word r;
    auto& out = r.letters_;
    out.reserve(step.length() + w.length());
    out = step.letters();
    for (const Letter& l : w.letters()) {
        if (!out.empty() && out.back().cancels(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return r;
}

WordMeasure::WordMeasure(std::vector<Word> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty() || atoms_.size() != weights_.size())
        throw ConfigError("WordMeasure: atoms/weights mismatch or empty");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw ConfigError("WordMeasure: weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 0.01)
        throw ConfigError("WordMeasure: weights sum to " + std::to_string(total) +
                    ", more than 1% away from 1");
    cdf_.reserve(weights_.size());
    double acc = 0.0;
    for (double& w : weights_) {
        w /= total;
        acc += w;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

std::size_t WordMeasure::pick(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::size_t>(it - cdf_.begin());
}

WordMeasure WordMeasure::reversed() const {
    std::vector<Word> atoms;
    atoms.reserve(atoms_.size());
    for (const Word& w : atoms_) atoms.push_back(w.inverse());
    return WordMeasure(std::move(atoms), weights_);
}

WordMeasure WordMeasure::uniform_symmetric(int num_generators) {
    std::vector<Word> atoms;
    std::vector<double> weights;
    for (int i = 0; i < num_generators; ++i) {
        atoms.push_back(Word::from_letters({Letter(i, false)}));
        atoms.push_back(Word::from_letters({Letter(i, true)}));
        weights.push_back(1.0 / (2 * num_generators));
        weights.push_back(1.0 / (2 * num_generators));
    }
    return WordMeasure(std::move(atoms), std::move(weights));
}

Word WalkSampler::sample_walk(std::size_t n) {
    Word w;
    for (std::size_t i = 0; i < n; ++i)
        w = left_multiply(w, measure_.atom(measure_.pick(rng_.uniform())));
    return w;
}

std::vector<std::size_t> WalkSampler::sample_steps(std::size_t n) {
    std::vector<std::size_t> steps(n);
    for (std::size_t i = 0; i < n; ++i) steps[i] = measure_.pick(rng_.uniform());
    return steps;
}

WordMeasure convolution_enumerate(const WordMeasure& mu, std::size_t n,
                                  std::size_t cap) {
    double combos = std::pow(static_cast<double>(mu.size()), static_cast<double>(n));
    if (combos > static_cast<double>(cap))
        throw CapExceededError("convolution_enumerate: |support|^n = " +
                               std::to_string(combos) + " exceeds cap " +
                               std::to_string(cap));
    std::map<Word, double> current{{Word(), 1.0}};
    for (std::size_t step = 0; step < n; ++step) {
        std::map<Word, double> next;
        for (const auto& [w, p] : current)
            for (std::size_t i = 0; i < mu.size(); ++i)
                next[left_multiply(w, mu.atom(i))] += p * mu.weight(i);
        current = std::move(next);
    }
    std::vector<Word> atoms;
    std::vector<double> weights;
    atoms.reserve(current.size());
    for (auto& [w, p] : current) {
        atoms.push_back(w);
        weights.push_back(p);
    }
    return WordMeasure(std::move(atoms), std::move(weights));
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        // longest matching generator name
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const std::string& nm = names[i];
            if (nm.size() > best_len && text.compare(pos, nm.size(), nm) == 0) {
                best = static_cast<int>(i);
                best_len = nm.size();
            }
        }
        if (best < 0)
            throw UnknownGeneratorError(text.substr(pos));
        pos += best_len;
        bool inv = (pos < text.size() && text[pos] == '\'');
        if (inv) ++pos;
        letters.emplace_back(best, inv);
    }
    return reduce(letters);
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.is_identity()) return "1";
    std::string out;
    for (const Letter& l : w.letters()) {
        out += names.at(static_cast<std::size_t>(l.index));
        if (l.inverted) out += '\'';
    }
    return out;
}

}  // namespace bifcur
