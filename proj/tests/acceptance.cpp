// Acceptance suite: runs every top-level criterion at its stated
// tolerance (everything here is exact arithmetic in F_p, so tolerance
// zero) and prints one PASS/FAIL line per criterion.  The CLI binary
// path is taken from argv[1] for the end-to-end criterion.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "supverma/free_oracle.hpp"
#include "supverma/scenario.hpp"

using namespace supverma;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool pass, double seconds) {
    std::printf("%s criterion %2d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", n, what.c_str(), seconds);
    if (!pass) ++failures;
}

template <typename F>
void criterion(int n, const std::string& what, F&& fn) {
    auto t0 = clock_type::now();
    bool pass = false;
    std::string extra;
    try {
        pass = fn(extra);
    } catch (const std::exception& e) {
        extra = e.what();
        pass = false;
    }
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    report(n, what + (extra.empty() ? "" : " [" + extra + "]"), pass, secs);
}

const std::vector<WittParams> kConfigs = {{3, 1, 1, {1}}, {5, 1, 1, {1}}, {3, 2, 1, {1, 1}}};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "algebra validity (anticommutativity, Jacobi, derivation oracle, ad-nilpotency)",
              [&](std::string& extra) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      auto t0 = clock_type::now();
                      WittAlgebra w = WittAlgebra::build(prm);
                      ok = ok && check_anticommutativity(w).ok && check_jacobi(w).ok &&
                           check_derivation_oracle(w).ok && check_ad_nilpotency(w).ok &&
                           check_neg_abelian(w).ok && check_grading(w).ok && check_gl0(w).ok;
                      double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
                      if (secs >= 10.0) {
                          extra = "a configuration exceeded 10 s";
                          ok = false;
                      }
                  }
                  return ok;
              });

    criterion(2, "dimension formula dim Ind = dim Coind = dim(O (x) V) = 2^l p^{sum m} dim V",
              [&](std::string&) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      for (const KModule& v : {trivial_module(w), natural_module(w)}) {
                          size_t expect = env.mono_count() * v.dim();
                          LModule ind = induce(env, twist(w, v, +1));
                          LModule coind = coinduce(env, v);
                          MixedResult mixed = verify_mixed(env, v);
                          ok = ok && ind.dim() == expect && coind.dim() == expect &&
                               mixed.mixed.dim() == expect;
                      }
                  }
                  return ok;
              });

    criterion(3, "natural map Phi: Ind(V_sigma) -> Coind(V) equivariant and bijective; naturality square commutes",
              [&](std::string&) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      for (const KModule& v :
                           {trivial_module(w), natural_module(w), dual_natural_module(w)}) {
                          PhiResult pr = build_phi(env, v);
                          ok = ok && pr.report.pass && pr.report.residual_entries == 0;
                      }
                      // naturality with a nonzero K-module endomorphism
                      KModule nat = natural_module(w);
                      std::vector<size_t> kg;
                      std::vector<FpMatrix> acts;
                      for (size_t j = 0; j < w.k_dim(); ++j) {
                          kg.push_back(w.k_global(j));
                          acts.push_back(nat.action[j]);
                      }
                      auto homs = hom_space(w, kg, acts, nat.space, acts, nat.space, Parity::even);
                      ok = ok && !homs.empty() && check_phi_naturality(env, nat, nat, homs[0].scaled(2));
                  }
                  return ok;
              });

    criterion(4, "coinduced module: positive P-grading, mu: P_0 -> V, transitivity", [&](std::string&) {
        bool ok = true;
        for (const WittParams& prm : kConfigs) {
            WittAlgebra w = WittAlgebra::build(prm);
            UEnv env(w);
            for (const KModule& v : {trivial_module(w), natural_module(w)}) {
                LModule coind = coinduce(env, v);
                ok = ok && check_l_module(w, coind).ok;
                ok = ok && grade_P(w, coind).ok;
                ok = ok && mu_iso(w, coind, v).ok;
                TransitivityReport tr = is_transitive(w, coind);
                ok = ok && tr.positively_graded && tr.transitive;
            }
        }
        return ok;
    });

    criterion(5, "adjoint map Psi bijective equivariant; self-duality answers agree (incl. a both-no case)",
              [&](std::string&) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      for (const KModule& v : {trivial_module(w), natural_module(w)}) {
                          PsiResult pr = build_psi_dual(env, v);
                          ok = ok && pr.report.pass;
                      }
                      SelfDualityResult triv = check_self_duality(env, trivial_module(w), 1);
                      ok = ok && triv.agree();
                      uint32_t c = 1;
                      while ((2 * c + 1) % prm.p == 0) ++c;
                      SelfDualityResult no = check_self_duality(env, character_module(w, c), 2);
                      ok = ok && no.agree() && !no.module_side && !no.induced_side;
                      SelfDualityResult yes = check_self_duality(env, sigma_half_module(w), 3);
                      ok = ok && yes.agree() && yes.module_side;
                  }
                  return ok;
              });

    criterion(6, "invariant forms: top pairing invariant and nondegenerate, zeta roundtrip, symmetry recorded",
              [&](std::string& extra) {
                  bool ok = true;
                  std::string symmetry_record;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      // the half character is the module for which zeta = id is
                      // a verified L_0-isomorphism (trivial V admits none on
                      // W(k,l,m): sigma never vanishes on L_0)
                      KModule v = sigma_half_module(w);
                      FpMatrix zeta = FpMatrix::identity(1, prm.p);
                      FormFromZeta f1 = form_from_zeta(env, v, zeta, Parity::even);
                      FormFromZeta f2 = form_from_zeta(env, v, zeta, Parity::even);
                      ok = ok && f1.invariant && f1.nondegenerate;
                      ok = ok && (f1.symmetry == "super" || f1.symmetry == "skew");
                      ok = ok && f1.symmetry == f2.symmetry && f1.form.gram == f2.form.gram;
                      ZetaFromForm back = zeta_from_form(env, v, f1.ind, f1.form);
                      ok = ok && back.zeta == zeta;
                      symmetry_record += f1.symmetry + " ";
                      // negative direction on the trivial module: no
                      // nondegenerate (skew-)supersymmetric invariant form
                      LModule ind0 = induce(env, twist(w, trivial_module(w), +1));
                      for (bool skew : {false, true}) {
                          auto space = invariant_symmetric_form_space(w, ind0, skew);
                          std::vector<FpMatrix> grams;
                          for (auto& bf : space) grams.push_back(bf.gram);
                          ok = ok && !contains_invertible(grams, prm.p, 4).exists;
                      }
                  }
                  extra = "symmetry: " + symmetry_record + "(half-character module)";
                  return ok;
              });

    criterion(7, "graded embedding psi injective, equivariant, degree 0, image = Coind_0; planted module flagged",
              [&](std::string&) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      LModule coind = coinduce(env, trivial_module(w));
                      PsiEmbedResult pe = psi_embed(env, coind);
                      ok = ok && pe.preconditions_ok && pe.equivariant && pe.injective &&
                           pe.degree_preserving && pe.image_is_degree0;
                      PsiEmbedResult pp = psi_embed(env, append_trivial_line(w, coind, 1));
                      ok = ok && pp.preconditions_ok && !pp.input_transitive && !pp.injective;
                  }
                  return ok;
              });

    criterion(8, "mixed product: transport sign found; derivative formulas and structure verified",
              [&](std::string& extra) {
                  bool ok = true;
                  std::string conventions;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      UEnv env(w);
                      for (const KModule& v : {trivial_module(w), natural_module(w)}) {
                          MixedResult mr = verify_mixed(env, v);
                          ok = ok && mr.found && mr.positively_graded && mr.transitive &&
                               mr.z_annihilated && mr.bracket_compatible;
                          conventions = mr.convention;
                      }
                  }
                  extra = "s: " + conventions;
                  return ok;
              });

    criterion(9, "straightening oracle: 500 seeded words of length <= 4 on W(1,1,(1))",
              [&](std::string& extra) {
                  auto t0 = clock_type::now();
                  WittAlgebra w = WittAlgebra::build({3, 1, 1, {1}});
                  UEnv env(w);
                  SplitMix64 rng(20240915);
                  size_t agree = 0;
                  for (int t = 0; t < 500; ++t) {
                      std::vector<int> word(1 + rng.below(4));
                      for (auto& x : word) x = static_cast<int>(rng.below(w.dim()));
                      size_t mono = rng.below(env.mono_count());
                      if (word_terms_equal(env.left_mult_word(word, mono),
                                           normalize_free_on_mono(env, word, mono)))
                          ++agree;
                  }
                  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
                  extra = std::to_string(agree) + "/500 agree";
                  return agree == 500 && secs < 60.0;
              });

    criterion(10, "sigma agrees with the brute-force supertrace and vanishes where required",
              [&](std::string&) {
                  bool ok = true;
                  for (const WittParams& prm : kConfigs) {
                      WittAlgebra w = WittAlgebra::build(prm);
                      std::vector<uint32_t> sigma = compute_sigma(w);
                      for (size_t j = 0; j < w.k_dim(); ++j) {
                          size_t x = w.k_global(j);
                          ok = ok && sigma[j] == test::sigma_bruteforce(w, x);
                          if (w.parity(x) == Parity::odd) ok = ok && sigma[j] == 0;
                          if (w.zdeg(x) > 0) ok = ok && sigma[j] == 0;
                      }
                  }
                  return ok;
              });

    criterion(11, "end-to-end: default CLI scenario exits 0, reruns byte-identical, under 5 minutes",
              [&](std::string& extra) {
                  if (cli.empty()) {
                      extra = "no CLI path given (pass the supverma binary as argv[1])";
                      return false;
                  }
                  auto t0 = clock_type::now();
                  std::string dir = "/tmp/supverma_acceptance_" + std::to_string(::getpid());
                  std::string mk = "mkdir -p " + dir + "/a " + dir + "/b";
                  if (std::system(mk.c_str()) != 0) return false;
                  {
                      std::ofstream sc(dir + "/scenario.json");
                      sc << R"({"p":3,"k":1,"l":1,"m":[1],"module":"trivial","checks":"all","seed":12345})";
                  }
                  std::string run1 = cli + " run " + dir + "/scenario.json --out " + dir + "/a > " + dir + "/log1.txt 2>&1";
                  std::string run2 = cli + " run " + dir + "/scenario.json --out " + dir + "/b > " + dir + "/log2.txt 2>&1";
                  int rc1 = std::system(run1.c_str());
                  int rc2 = std::system(run2.c_str());
                  std::string a = read_file(dir + "/a/report.json");
                  std::string b = read_file(dir + "/b/report.json");
                  // exit-code contract: invalid configuration -> 2,
                  // verification failure -> 1
                  {
                      std::ofstream sc(dir + "/p2.json");
                      sc << R"({"p":2,"k":1,"l":1,"m":[1],"module":"trivial","checks":"all","seed":1})";
                  }
                  {
                      std::ofstream sc(dir + "/bad.json");
                      sc << R"({"p":3,"k":1,"l":1,"m":[1],"module":"trivial","checks":"all","seed":1,"plant":"corrupt_bracket"})";
                  }
                  int rc_cfg = std::system((cli + " run " + dir + "/p2.json --out " + dir + " > /dev/null 2>&1").c_str());
                  int rc_bad = std::system((cli + " run " + dir + "/bad.json --out " + dir + " > /dev/null 2>&1").c_str());
                  bool codes_ok = WEXITSTATUS(rc_cfg) == 2 && WEXITSTATUS(rc_bad) == 1;
                  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
                  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b && codes_ok && secs < 300.0;
                  if (!ok)
                      extra = "rc1=" + std::to_string(rc1) + " rc2=" + std::to_string(rc2) +
                              " identical=" + (a == b && !a.empty() ? "yes" : "no") +
                              " exit-codes=" + (codes_ok ? "ok" : "wrong");
                  return ok;
              });

    std::printf("%s\n", failures == 0 ? "acceptance: all criteria PASS" : "acceptance: FAILURES present");
    return failures;
}
