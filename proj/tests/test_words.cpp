#include <cmath>
#include <map>
#include <set>

#include <doctest.h>

#include "bifcur/rng.hpp"
#include "bifcur/words.hpp"

using namespace bifcur;

namespace {
const std::vector<std::string> kAB{"a", "b"};
Word W(const std::string& s) { return parse_word(s, kAB); }
}  // namespace

TEST_CASE("free reduction") {
    CHECK(W("aa'") == Word());
    CHECK(W("ab'ba'") == Word());
    CHECK(W("aba'") == parse_word("aba'", kAB));
    CHECK(W("abb'a'b") == W("b"));
    CHECK(W("a").length() == 1);
    CHECK(W("abab").length() == 4);
}

TEST_CASE("parse and format round trip") {
    for (const std::string& s : {"a", "ab'", "a'b'ab", "bbba'"}) {
        CHECK(format_word(W(s), kAB) == s);
    }
    CHECK(format_word(Word(), kAB) == "1");
    CHECK_THROWS_AS(parse_word("ax", kAB), UnknownGeneratorError);
    // longest-name matching with multi-letter generator names
    std::vector<std::string> names{"g", "g2"};
    Word w = parse_word("g2g'", names);
    CHECK(w.length() == 2);
    CHECK(format_word(w, names) == "g2g'");
}

TEST_CASE("inverse and group laws") {
    Word w = W("ab'ab");
    CHECK(left_multiply(w, w.inverse()) == Word());
    CHECK(left_multiply(w.inverse(), w) == Word());
    CHECK(w.inverse().inverse() == w);
    // left walk convention: multiplying by step g prepends g
    Word step = W("b");
    Word prod = left_multiply(w, step);
    CHECK(format_word(prod, kAB) == "bab'ab");
}

TEST_CASE("word measure normalization and pick") {
    WordMeasure mu({W("a"), W("b")}, {0.5, 0.5});
    CHECK(mu.weight(0) == doctest::Approx(0.5));
    // near-1 sums are normalized
    WordMeasure mu2({W("a"), W("b")}, {0.501, 0.501});
    CHECK(mu2.weight(0) + mu2.weight(1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(WordMeasure({W("a"), W("b")}, {0.7, 0.7}), ConfigError);
    CHECK_THROWS_AS(WordMeasure({W("a")}, {-1.0}), ConfigError);

    CHECK(mu.pick(0.1) == 0);
    CHECK(mu.pick(0.9) == 1);
}

TEST_CASE("uniform symmetric measure") {
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    CHECK(mu.size() == 4);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(mu.weight(i) == doctest::Approx(0.25));
        sum += mu.weight(i);
        CHECK(mu.atom(i).length() == 1);
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("reversed measure inverts every atom") {
    WordMeasure mu({W("ab"), W("b'")}, {0.25, 0.75});
    WordMeasure rev = mu.reversed();
    CHECK(rev.atom(0) == W("ab").inverse());
    CHECK(rev.weight(1) == doctest::Approx(0.75));
}

TEST_CASE("sampler determinism and stream independence") {
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    WalkSampler s1(mu, 12345, 0);
    WalkSampler s2(mu, 12345, 0);
    for (int k = 0; k < 10; ++k) CHECK(s1.sample_walk(20) == s2.sample_walk(20));
    WalkSampler s3(mu, 12345, 1);
    bool differs = false;
    WalkSampler s4(mu, 12345, 0);
    for (int k = 0; k < 10; ++k)
        if (s4.sample_walk(20) != s3.sample_walk(20)) differs = true;
    CHECK(differs);
    // split streams are reproducible and distinct
    WalkSampler base(mu, 99, 0);
    CHECK(base.split(3).sample_walk(30) == base.split(3).sample_walk(30));
    CHECK(base.split(3).sample_walk(30) != base.split(4).sample_walk(30));
}

TEST_CASE("sampled step frequencies match the measure") {
    WordMeasure mu({W("a"), W("b"), W("a'")}, {0.5, 0.3, 0.2});
    WalkSampler s(mu, 777, 0);
    std::vector<int> counts(3, 0);
    int total = 20000;
    auto steps = s.sample_steps(static_cast<std::size_t>(total));
    for (std::size_t idx : steps) counts[idx]++;
    // binomial oracle: 4 sigma around n p
    for (std::size_t i = 0; i < 3; ++i) {
        double p = mu.weight(i);
        double sd = std::sqrt(total * p * (1.0 - p));
        CHECK(std::abs(counts[i] - total * p) < 4.0 * sd);
    }
}

TEST_CASE("sample_walk equals the product of sampled steps") {
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    WalkSampler s1(mu, 5, 2);
    WalkSampler s2(mu, 5, 2);
    Word walk = s1.sample_walk(40);
    auto steps = s2.sample_steps(40);
    Word manual;
    for (std::size_t idx : steps) manual = left_multiply(manual, mu.atom(idx));
    CHECK(walk == manual);
}

TEST_CASE("convolution powers: exact enumeration oracle") {
    WordMeasure mu = WordMeasure::uniform_symmetric(2);
    WordMeasure mu2 = convolution_enumerate(mu, 2);
    // length-2 reduced words over {a,a',b,b'}: 16 products, 4 cancel to the
    // identity, the rest give the 12 distinct reduced length-2 words
    CHECK(mu2.size() == 13);
    double id_mass = 0.0, total = 0.0;
    for (std::size_t i = 0; i < mu2.size(); ++i) {
        total += mu2.weight(i);
        if (mu2.atom(i).is_identity()) id_mass += mu2.weight(i);
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(id_mass == doctest::Approx(0.25));
    // each surviving length-2 word has mass 1/16
    for (std::size_t i = 0; i < mu2.size(); ++i)
        if (!mu2.atom(i).is_identity())
            CHECK(mu2.weight(i) == doctest::Approx(1.0 / 16.0));
    CHECK_THROWS_AS(convolution_enumerate(mu, 30, 1000), CapExceededError);
}

TEST_CASE("convolution matches Monte Carlo frequencies") {
    WordMeasure mu({W("a"), W("b"), W("b'")}, {0.4, 0.3, 0.3});
    WordMeasure mu3 = convolution_enumerate(mu, 3);
    std::map<Word, double> exact;
    for (std::size_t i = 0; i < mu3.size(); ++i) exact[mu3.atom(i)] = mu3.weight(i);
    WalkSampler s(mu, 31337, 0);
    std::map<Word, int> counts;
    int trials = 30000;
    for (int k = 0; k < trials; ++k) counts[s.sample_walk(3)]++;
    for (const auto& [w, c] : counts) {
        double p = exact.at(w);
        double sd = std::sqrt(trials * p * (1.0 - p));
        CHECK(std::abs(c - trials * p) < 5.0 * sd + 5.0);
    }
}

TEST_CASE("counter rng basic statistics and reproducibility") {
    CounterRng a(1, 0), b(1, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CounterRng c(1, 0);
    double mean = 0.0;
    int n = 10000;
    std::set<std::uint64_t> seen;
    CounterRng d(1, 5);
    for (int i = 0; i < n; ++i) {
        mean += c.uniform();
        seen.insert(d.next_u64());
    }
    mean /= n;
    CHECK(std::abs(mean - 0.5) < 0.02);
    CHECK(seen.size() == static_cast<std::size_t>(n));  // no collisions
}
