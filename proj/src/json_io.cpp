#include "supverma/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace supverma {

using nlohmann::json;

static json grading_to_json(const Grading& g) {
    return json{{"parity", parity_bit(g.parity)}, {"degree", g.degree}};
}

nlohmann::json algebra_to_json(const WittAlgebra& w) {
    json j;
    j["type"] = "witt-algebra";
    j["p"] = w.params().p;
    j["k"] = w.params().k;
    j["l"] = w.params().l;
    j["m"] = w.params().m;
    j["dim"] = w.dim();
    json basis = json::array();
    for (size_t i = 0; i < w.dim(); ++i) {
        json b = grading_to_json(w.grading(i));
        b["name"] = w.name(i);
        basis.push_back(b);
    }
    j["basis"] = basis;
    json brackets = json::array();
    for (size_t i = 0; i < w.dim(); ++i)
        for (size_t jj = 0; jj < w.dim(); ++jj) {
            const SparseVec& v = w.bracket(i, jj);
            if (v.empty()) continue;
            json terms = json::array();
            for (const auto& [t, c] : v) terms.push_back(json::array({t, c}));
            brackets.push_back(json::array({i, jj, terms}));
        }
    j["brackets"] = brackets;
    return j;
}

WittAlgebra algebra_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "witt-algebra") throw std::invalid_argument("not a witt-algebra dump");
    WittParams params;
    params.p = j.at("p").get<uint32_t>();
    params.k = j.at("k").get<int>();
    params.l = j.at("l").get<int>();
    params.m = j.at("m").get<std::vector<int>>();
    require_odd_prime(params.p);
    // rebuild the basis, then install the dumped brackets
    WittAlgebra fresh = WittAlgebra::build(params);
    std::vector<SparseVec> brackets(fresh.dim() * fresh.dim());
    for (const auto& entry : j.at("brackets")) {
        size_t a = entry.at(0).get<size_t>(), b = entry.at(1).get<size_t>();
        if (a >= fresh.dim() || b >= fresh.dim()) throw std::invalid_argument("bracket index out of range");
        SparseVec v;
        for (const auto& t : entry.at(2)) v.emplace_back(t.at(0).get<int>(), t.at(1).get<uint32_t>());
        brackets[a * fresh.dim() + b] = std::move(v);
    }
    return WittAlgebra::from_parts(params, std::move(brackets));
}

static const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::induced: return "induced";
        case Provenance::coinduced: return "coinduced";
        case Provenance::dual: return "dual";
        case Provenance::mixed: return "mixed";
        default: return "custom";
    }
}

static Provenance provenance_from(const std::string& s) {
    if (s == "induced") return Provenance::induced;
    if (s == "coinduced") return Provenance::coinduced;
    if (s == "dual") return Provenance::dual;
    if (s == "mixed") return Provenance::mixed;
    return Provenance::custom;
}

nlohmann::json lmodule_to_json(const WittAlgebra& w, const LModule& m) {
    json j;
    j["type"] = "l-module";
    j["p"] = w.params().p;
    j["provenance"] = provenance_name(m.provenance);
    json labels = json::array();
    for (size_t i = 0; i < m.dim(); ++i) {
        json b = grading_to_json(m.space.label(i).grading);
        b["name"] = m.space.label(i).name;
        b["level"] = m.level[i];
        labels.push_back(b);
    }
    j["labels"] = labels;
    json action = json::array();
    for (size_t x = 0; x < w.dim(); ++x) {
        json entries = json::array();
        for (size_t r = 0; r < m.dim(); ++r)
            for (size_t c = 0; c < m.dim(); ++c)
                if (m.action[x].at(r, c)) entries.push_back(json::array({r, c, m.action[x].at(r, c)}));
        action.push_back(json{{"generator", x}, {"generator_name", w.name(x)}, {"entries", entries}});
    }
    j["action"] = action;
    return j;
}

LModule lmodule_from_json(const WittAlgebra& w, const nlohmann::json& j) {
    if (j.value("type", "") != "l-module") throw std::invalid_argument("not an l-module dump");
    LModule m;
    m.provenance = provenance_from(j.value("provenance", "custom"));
    std::vector<BasisLabel> labels;
    for (const auto& b : j.at("labels")) {
        labels.push_back({b.at("name").get<std::string>(),
                          {b.at("parity").get<int>() ? Parity::odd : Parity::even, b.at("degree").get<int>()}});
        m.level.push_back(b.at("level").get<int>());
    }
    m.space = GradedSpace(std::move(labels), w.params().p);
    m.action.assign(w.dim(), FpMatrix(m.dim(), m.dim(), w.params().p));
    for (const auto& a : j.at("action")) {
        size_t x = a.at("generator").get<size_t>();
        if (x >= w.dim()) throw std::invalid_argument("generator index out of range");
        for (const auto& e : a.at("entries"))
            m.action[x].set(e.at(0).get<size_t>(), e.at(1).get<size_t>(), e.at(2).get<uint32_t>());
    }
    return m;
}

KModule kmodule_from_json(const WittAlgebra& w, const nlohmann::json& j) {
    if (j.value("type", "") != "k-module") throw std::invalid_argument("not a k-module file");
    KModule v;
    std::vector<BasisLabel> labels;
    for (const auto& b : j.at("labels"))
        labels.push_back({b.at("name").get<std::string>(),
                          {b.at("parity").get<int>() ? Parity::odd : Parity::even, b.at("degree").get<int>()}});
    v.space = GradedSpace(std::move(labels), w.params().p);
    v.sigma = compute_sigma(w);
    v.action.assign(w.k_dim(), FpMatrix(v.dim(), v.dim(), w.params().p));
    if (j.contains("action"))
        for (const auto& [name, rows] : j.at("action").items()) {
            size_t found = w.dim();
            for (size_t i = 0; i < w.dim(); ++i)
                if (w.name(i) == name) {
                    found = i;
                    break;
                }
            if (found == w.dim()) throw std::invalid_argument("unknown generator name: " + name);
            if (!w.in_K(found)) throw std::invalid_argument("generator " + name + " is not in K");
            FpMatrix mat(v.dim(), v.dim(), w.params().p);
            size_t r = 0;
            for (const auto& row : rows) {
                size_t c = 0;
                for (const auto& val : row) mat.set(r, c++, ((val.get<int64_t>() % w.params().p) + w.params().p) % w.params().p);
                ++r;
            }
            v.action[w.k_local(found)] = std::move(mat);
        }
    AlgebraCheck chk = check_k_module(w, v);
    if (!chk.ok) throw std::invalid_argument("custom module invalid: " + chk.witness);
    return v;
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace supverma
