#include "supverma/free_oracle.hpp"

#include <algorithm>
#include <map>

namespace supverma {

namespace {

struct PendingWord {
    uint32_t coeff;
    std::vector<int> letters;
};

// first adjacent pair that is out of normal order; -1 when terminal
int first_bad_pair(const WittAlgebra& w, const std::vector<int>& letters) {
    for (size_t q = 0; q + 1 < letters.size(); ++q) {
        int a = letters[q], b = letters[q + 1];
        bool a_neg = w.is_negative(a), b_neg = w.is_negative(b);
        if (!a_neg && b_neg) return static_cast<int>(q);            // K before L^-
        if (a_neg && b_neg && a > b) return static_cast<int>(q);     // descending L^-
        if (a_neg && b_neg && a == b && w.parity(a) == Parity::odd)  // odd square
            return static_cast<int>(q);
    }
    return -1;
}

}  // namespace

std::vector<WordTerm> normalize_free(const WittAlgebra& w, const std::vector<int>& word, uint32_t coeff) {
    const uint32_t p = w.params().p;
    const int k = w.params().k;
    std::vector<PendingWord> work = {{coeff, word}};
    std::map<std::pair<size_t, std::vector<int>>, uint32_t> terms;
    const MonoIndexer& idx = w.omonos();

    while (!work.empty()) {
        PendingWord cur = std::move(work.back());
        work.pop_back();
        if (cur.coeff == 0) continue;
        int q = first_bad_pair(w, cur.letters);
        if (q >= 0) {
            int a = cur.letters[q], b = cur.letters[q + 1];
            if (a == b && w.parity(a) == Parity::odd) {
                // aa = [a,a]/2
                uint32_t half = fp_inv(2 % p, p);
                for (const auto& [t, c] : w.bracket(a, a)) {
                    PendingWord nw;
                    nw.coeff = fp_mul(cur.coeff, fp_mul(half, c, p), p);
                    nw.letters = cur.letters;
                    nw.letters[q] = t;
                    nw.letters.erase(nw.letters.begin() + q + 1);
                    work.push_back(std::move(nw));
                }
                continue;
            }
            // ab = (-1)^{d(a)d(b)} ba + [a,b]
            PendingWord swapped;
            swapped.coeff = fp_mul(cur.coeff, koszul_sign(w.parity(a), w.parity(b), p), p);
            swapped.letters = cur.letters;
            std::swap(swapped.letters[q], swapped.letters[q + 1]);
            work.push_back(std::move(swapped));
            for (const auto& [t, c] : w.bracket(a, b)) {
                PendingWord nw;
                nw.coeff = fp_mul(cur.coeff, c, p);
                nw.letters = cur.letters;
                nw.letters[q] = t;
                nw.letters.erase(nw.letters.begin() + q + 1);
                work.push_back(std::move(nw));
            }
            continue;
        }
        // terminal: sorted L^- block, then the K tail
        OMono mono;
        mono.alpha.assign(k, 0);
        size_t pos = 0;
        bool dropped = false;
        for (; pos < cur.letters.size() && w.is_negative(cur.letters[pos]); ++pos) {
            int letter = cur.letters[pos];
            if (letter < k) {
                if (++mono.alpha[letter] >= idx.caps()[letter]) {
                    dropped = true;  // contains z_i
                    break;
                }
            } else {
                mono.umask |= 1u << (letter - k);
            }
        }
        if (dropped) continue;
        std::vector<int> tail(cur.letters.begin() + pos, cur.letters.end());
        auto key = std::make_pair(idx.index(mono), std::move(tail));
        auto it = terms.find(key);
        if (it == terms.end())
            terms.emplace(std::move(key), cur.coeff);
        else
            it->second = fp_add(it->second, cur.coeff, p);
    }

    std::vector<WordTerm> out;
    for (auto& [key, c] : terms)
        if (c) out.push_back({c, key.first, key.second});
    return out;
}

std::vector<WordTerm> normalize_free_on_mono(const UEnv& env, const std::vector<int>& word, size_t mono) {
    std::vector<int> full = word;
    std::vector<int> mw = env.mono_word(mono);
    full.insert(full.end(), mw.begin(), mw.end());
    return normalize_free(env.algebra(), full, 1);
}

bool word_terms_equal(const std::vector<WordTerm>& a, const std::vector<WordTerm>& b) {
    auto key = [](const WordTerm& t) { return std::make_pair(t.mono, t.tail); };
    if (a.size() != b.size()) return false;
    std::vector<WordTerm> as = a, bs = b;
    auto cmp = [&](const WordTerm& x, const WordTerm& y) { return key(x) < key(y); };
    std::sort(as.begin(), as.end(), cmp);
    std::sort(bs.begin(), bs.end(), cmp);
    for (size_t i = 0; i < as.size(); ++i)
        if (key(as[i]) != key(bs[i]) || as[i].coeff != bs[i].coeff) return false;
    return true;
}

}  // namespace supverma
