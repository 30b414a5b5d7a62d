#include "ncdomain/counterexample.hpp"

#include <algorithm>
#include <map>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

constexpr std::size_t kLetters = 4;

// The relabelings x_k -> x_perm[k] preserving the domain of the block function; each sends a
// different letter to x1.
const std::vector<std::vector<std::size_t>> kPermutations = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

Word prepend(std::size_t letter, const Word& w) {
    Word out{letter};
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

}  // namespace

CounterexampleData build_counterexample(const FreeSeries& f) {
    if (f.g() > kLetters) throw VariableOutOfRange("the construction needs a polynomial in x1..x4");
    const std::size_t d = f.degree();
    if (d == 0) throw NoLeadingMonomial("polynomial must have positive degree");
    FreeSeries f4(kLetters, d);
    for (const auto& [w, c] : f.terms()) f4.set(w, c);

    CounterexampleData cd{f, {}, FreeSeries(kLetters, d), FreeSeries(kLetters, d), {}, d, 0, 0, {}, {}};
    bool found = false;
    for (const auto& perm : kPermutations) {
        const FreeSeries candidate = substitute_letters(f4, perm);
        for (const auto& [w, c] : candidate.terms()) {
            if (w.size() == d && w.front() == 0) {
                cd.permutation = perm;
                cd.u0 = Word(w.begin() + 1, w.end());
                cd.normalized = candidate.scaled(1 / c);
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found) throw NoLeadingMonomial("no degree-" + std::to_string(d) + " monomial starting with x1");

    const Word lead = prepend(0, cd.u0);
    cd.h = FreeSeries(kLetters, d);
    cd.h.set(lead, Rat(1));
    cd.h = cd.h - cd.normalized;

    cd.basis.push_back(cd.u0);
    for (const auto& w : words_up_to(kLetters, d - 1))
        if (w != cd.u0) cd.basis.push_back(w);
    cd.M = cd.basis.size() - 1;
    for (const auto& w : words_up_to(kLetters, d))
        if (w.size() == d && w != lead) cd.basis.push_back(w);
    cd.N = cd.basis.size() - 1 - cd.M;

    std::map<Word, std::size_t> position;
    for (std::size_t i = 0; i < cd.basis.size(); ++i) position.emplace(cd.basis[i], i);
    const std::size_t size = cd.basis.size();

    std::vector<QMatrix> xp(kLetters, QMatrix(size, size));
    for (std::size_t k = 0; k < kLetters; ++k) {
        std::vector<std::size_t> others;  // basis positions of words not starting with x_k
        for (std::size_t i = 0; i < size; ++i)
            if (cd.basis[i].empty() || cd.basis[i].front() != k) others.push_back(i);
        for (std::size_t col = 0; col < size; ++col) {
            const Word& w = cd.basis[col];
            if (col == 0 && k == 0) {
                for (const auto& [word, c] : cd.h.terms()) xp[k](position.at(word), col) = c;
            } else if (col <= cd.M) {
                xp[k](position.at(prepend(k, w)), col) = Rat(1);
            } else if (k == 1 || k == 2) {
                xp[k](others.at(col - cd.M - 1), col) = Rat(1);
            }
        }
    }
    cd.X.n = size;
    for (std::size_t k = 0; k < kLetters; ++k) cd.X.mats.push_back(xp[cd.permutation[k]]);
    return cd;
}

std::vector<Check> verify_counterexample(const CounterexampleData& cd) {
    std::vector<Check> report;
    const std::size_t size = cd.size();

    FreeSeries original(kLetters, cd.d);
    for (const auto& [w, c] : cd.f.terms()) original.set(w, c);
    const QMatrix fx = evaluate(original, cd.X);
    const auto empty = std::find(cd.basis.begin(), cd.basis.end(), Word{});
    const std::size_t e = static_cast<std::size_t>(empty - cd.basis.begin());
    const bool kills = fx.col(e).is_zero();
    report.push_back({"f(X) singular", kills,
                      kills ? "f(X) maps the empty word to 0" : "f(X) does not annihilate the empty word"});

    QMatrix block(2 * size, 2 * size);
    block.set_block(0, 0, cd.X[0]);
    block.set_block(0, size, cd.X[1]);
    block.set_block(size, 0, cd.X[2]);
    block.set_block(size, size, cd.X[3]);
    const bool invertible = sgn(det(block)) != 0;
    report.push_back({"block matrix invertible", invertible,
                      "det of the " + std::to_string(2 * size) + "x" + std::to_string(2 * size) +
                          " block matrix is " + (invertible ? "nonzero" : "zero")});

    const std::vector<Rat> alpha{Rat(1), Rat(0), Rat(0), Rat(1)};
    const PencilDomain pd(parse("inv(x4 - x3*inv(x1)*x2)"), alpha, kLetters);
    const bool inside = pd.contains(cd.X);
    report.push_back({"X in domain", inside,
                      "pencil of size " + std::to_string(pd.size()) + " at (1,0,0,1) is " +
                          (inside ? "invertible" : "singular") + " at X"});
    return report;
}

}  // namespace ncdomain
