// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "mixtilt/serialize.hpp"
#include "mixtilt/tilting.hpp"
#include "oracle/sn_hecke.hpp"

using namespace mixtilt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Case {
  std::string label;
  std::optional<std::size_t> radius;  // nullopt: whole finite group
};

// systems of criterion 1
const std::vector<Case> kSystems = {
    {"A2", std::nullopt}, {"A3", std::nullopt}, {"B2", std::nullopt},
    {"B3", std::nullopt}, {"~A1", 10},          {"~A2", 6},
};

std::string name(const Case& c) {
  return c.label + (c.radius ? " ball " + std::to_string(*c.radius) : "");
}

struct Setup {
  std::unique_ptr<CoxeterSystem> sys;
  std::unique_ptr<HeckeContext> hecke;
  OrderIdeal ideal;
};

Setup setup(const Case& c) {
  Setup s;
  s.sys = std::make_unique<CoxeterSystem>(CoxeterDescriptor::parse(c.label));
  s.hecke = std::make_unique<HeckeContext>(*s.sys);
  s.ideal = s.sys->enumerate_ball(c.radius);
  return s;
}

void fail(Outcome& o, const std::string& what) {
  if (o.ok) o.detail = what;
  o.ok = false;
}

Outcome kl_agreement() {
  Outcome o;
  std::size_t entries = 0;
  for (const Case& c : kSystems) {
    Setup s = setup(c);
    HeckeContext kl_side(*s.sys);  // separate memo tables for the PositivePart path
    const auto& sys = *s.sys;
    for (Element alpha : s.ideal) {
      const WeightVector v = tilting_vector(*s.hecke, alpha, s.ideal);
      for (Element gamma : s.ideal) {
        LaurentPoly expected;
        if (sys.bruhat_leq(gamma, alpha)) {
          const int d = static_cast<int>(sys.length(alpha) - sys.length(gamma));
          const LaurentPoly p = kl_side.kl_P(gamma, alpha);
          for (const auto& [k, coeff] : p.terms()) expected.add_term(d - 2 * k, coeff);
        }
        ++entries;
        if (v.at(gamma) != expected)
          fail(o, name(c) + " entry (" + sys.format(alpha) + ", " + sys.format(gamma) + ")");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(entries) + " entries over 6 systems";
  return o;
}

Outcome specific_value() {
  Outcome o;
  // oracle first: permutation Hecke algebra, bar-invariance solve
  const oracle::Perm w = oracle::from_word(4, {1, 0, 2, 1});
  const oracle::Perm x = oracle::from_word(4, {1});
  const oracle::Poly oracle_p = oracle::kl_polynomial(oracle::canonical(w), x, w);
  const oracle::Poly oracle_h_coeffs = oracle::canonical(w).at(x);
  if (oracle_p != oracle::Poly{{0, 1}, {1, 1}}) fail(o, "oracle disagrees with 1 + q");

  CoxeterSystem a3(CoxeterDescriptor::parse("A3"));
  HeckeContext hecke(a3);
  const Element y = a3.parse("2,1,3,2"), s2 = a3.parse("2");
  const LaurentPoly p = hecke.kl_P(s2, y);
  const LaurentPoly entry = tilting_vector(hecke, y, a3.enumerate_ball(std::nullopt)).at(s2);
  LaurentPoly oracle_h;
  for (const auto& [e, c] : oracle_h_coeffs) oracle_h.add_term(e, Integer(static_cast<long>(c)));
  if (p.to_string_ascending("q") != "1 + q") fail(o, "P = " + p.to_string_ascending("q"));
  if (entry.to_string() != "t^3 + t") fail(o, "tilting entry " + entry.to_string());
  if (entry != oracle_h) fail(o, "tilting entry differs from the oracle");
  if (o.ok) o.detail = "P = 1 + q, entry t^3 + t, oracle agrees";
  return o;
}

Outcome ringel() {
  Outcome o;
  std::vector<std::string> same_side_fails;
  for (const Case& c : kSystems) {
    Setup s = setup(c);
    const RingelReport r = ringel_verify(*s.hecke, s.ideal);
    if (!r.inversion_ok) fail(o, name(c) + ": inversion");
    if (s.sys->is_finite() && !(r.w0_formula_ok && *r.w0_formula_ok)) fail(o, name(c) + ": w0 formula");
    if (!r.same_side_product_identity) same_side_fails.push_back(c.label);
  }
  if (o.ok) {
    o.detail = "opposite-side IC inverse on 6 systems, w0 formula on 4";
    if (!same_side_fails.empty()) {
      o.detail += "; same-side product not identity on";
      for (const auto& l : same_side_fails) o.detail += " " + l;
    }
  }
  return o;
}

Outcome pushforward() {
  Outcome o;
  std::size_t zero = 0, live = 0;
  auto run_case = [&](const Case& c) {
    Setup s = setup(c);
    const auto& sys = *s.sys;
    const auto subsets = all_parabolic_subsets(sys);
    for (const auto& subset : subsets) {
      const ParabolicData parabolic(sys, s.ideal, subset, Side::Left);
      for (Element alpha : s.ideal) {
        PushforwardResult r;
        try {
          r = pushforward_tilting(*s.hecke, alpha, subset, s.ideal);
        } catch (const SelfDualityError& e) {
          fail(o, name(c) + ": " + e.what());
          continue;
        }
        if (r.zero != !parabolic.is_minimal(alpha)) fail(o, name(c) + ": dichotomy at " + sys.format(alpha));
        if (!r.zero && !check_condition_W(r.vector, alpha)) fail(o, name(c) + ": (W) at " + sys.format(alpha));
        ++(r.zero ? zero : live);
      }
    }
    return subsets.size();
  };
  const std::size_t n4 = run_case({"A3", std::nullopt});
  const std::size_t na = run_case({"~A2", 6});
  if (n4 != 8 || na != 7) fail(o, "wrong number of parabolic subsets");

  // Euler identity: full parabolic, finite types
  for (const char* label : {"A2", "A3", "B2", "B3"}) {
    Setup s = setup({label, std::nullopt});
    for (Element alpha : s.ideal) {
      LaurentPoly sum;
      for (Element g : s.ideal) {
        LaurentPoly term = s.hecke->kl_h(g, alpha).shifted(static_cast<int>(s.sys->length(g)));
        sum += s.sys->length(g) % 2 ? -term : term;
      }
      if (sum != LaurentPoly(alpha == s.sys->identity() ? 1 : 0))
        fail(o, std::string(label) + ": Euler identity at " + s.sys->format(alpha));
    }
  }
  if (o.ok)
    o.detail = std::to_string(zero) + " vanishing, " + std::to_string(live) +
               " surviving push-forwards; Euler identity on A2 A3 B2 B3";
  return o;
}

Outcome uniqueness() {
  Outcome o;
  std::size_t mutants = 0, ideals = 0;
  auto check = [&](const char* label, const CoxeterSystem& sys, const HeckeContext& hecke, const OrderIdeal& ideal) {
    if (ideal.size() > 30) {
      fail(o, std::string(label) + ": ideal too large");
      return;
    }
    ++ideals;
    for (Element top : ideal) {
      const MutationReport r = mutation_test(hecke, top, ideal);
      mutants += r.mutants;
      if (r.survivors) fail(o, std::string(label) + ": mutant survived below " + sys.format(top));
    }
  };
  for (auto [label, top] : {std::pair{"A2", "1,2,1"}, {"A3", "2,1,3,2"}, {"A3", "1,2,3,2,1"},
                            {"B2", "1,2,1,2"}, {"B3", "1,2,3,2"}, {"G2", "1,2,1,2,1"}}) {
    CoxeterSystem sys(CoxeterDescriptor::parse(label));
    HeckeContext hecke(sys);
    check(label, sys, hecke, sys.enumerate_ideal(sys.parse(top)));
  }
  for (auto [label, radius] : {std::pair{"~A1", 10}, {"~A2", 3}, {"~C2", 3}}) {
    CoxeterSystem sys(CoxeterDescriptor::parse(label));
    HeckeContext hecke(sys);
    check(label, sys, hecke, sys.enumerate_ball(radius));
  }
  if (o.ok) o.detail = std::to_string(mutants) + " mutants on " + std::to_string(ideals) + " ideals, none survive";
  return o;
}

Outcome infrastructure() {
  Outcome o;
  std::size_t pairs = 0;
  for (const Case& c : kSystems) {
    Setup s = setup(c);
    for (Element x : s.ideal)
      for (Element y : s.ideal) {
        if (!s.sys->bruhat_leq(x, y)) continue;
        ++pairs;
        if (duality_defect(*s.hecke, s.ideal, x, y) != LaurentPoly(x == y ? 1 : 0))
          fail(o, name(c) + ": duality at (" + s.sys->format(x) + ", " + s.sys->format(y) + ")");
      }
  }
  for (const Case& c : {Case{"A2", std::nullopt}, Case{"A3", std::nullopt}, Case{"B2", std::nullopt}, Case{"~A1", 6}}) {
    Setup s = setup(c);
    const auto& sys = *s.sys;
    for (Element y : s.ideal) {
      const auto& word = sys.word(y);
      std::set<Element> below;
      for (std::uint64_t mask = 0; mask < (1ULL << word.size()); ++mask) {
        std::vector<int> sub;
        for (std::size_t k = 0; k < word.size(); ++k)
          if (mask & (1ULL << k)) sub.push_back(word[k]);
        below.insert(sys.from_word(sub));
      }
      for (Element x : s.ideal)
        if (sys.bruhat_leq(x, y) != (below.count(x) != 0)) fail(o, name(c) + ": Bruhat order vs subwords");
    }
  }
  CoxeterSystem a1(CoxeterDescriptor::parse("~A1"));
  for (std::size_t L = 0; L <= 12; ++L) {
    std::size_t at_radius = 0;
    for (Element w : a1.enumerate_ball(L))
      if (a1.length(w) == L) ++at_radius;
    if (a1.enumerate_ball(L).size() != 2 * L + 1 || at_radius != (L == 0 ? 1 : 2))
      fail(o, "affine A1 ball count at L = " + std::to_string(L));
  }
  if (o.ok) o.detail = std::to_string(pairs) + " duality pairs, subword oracle on 4 systems, ball counts to L = 12";
  return o;
}

struct Shell {
  int status;
  std::string out;
};

Shell cli(const std::string& args) {
  const std::string cmd = std::string(MIXTILT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Outcome cli_determinism() {
  Outcome o;
  const Shell a = cli("verify --type A3 --max-length 6");
  const Shell b = cli("verify --type A3 --max-length 6");
  if (a.status != 0 || b.status != 0) fail(o, "verify exit status " + std::to_string(a.status));
  if (a.out != b.out || a.out.empty()) fail(o, "verify output differs between runs");

  std::size_t tables = 0;
  for (const Case& c : {Case{"A3", std::nullopt}, Case{"B3", std::nullopt}, Case{"~A2", 4}}) {
    Setup s = setup(c);
    const std::string trunc = c.radius ? " --max-length " + std::to_string(*c.radius) : "";
    const std::vector<std::pair<std::string, WeightMatrix>> expected = {
        {"tilting", tilting_matrix(*s.hecke, s.ideal)},
        {"ic", ic_matrix(*s.hecke, s.ideal)},
        {"invert", tilting_from_inversion(*s.hecke, s.ideal)}};
    for (const auto& [task, m] : expected) {
      const Shell sh = cli(task + " --type " + c.label + trunc);
      ++tables;
      try {
        const Json j = Json::parse(sh.out);
        if (sh.status != 0 || !(matrix_from_json(*s.sys, j) == m) || j.dump(2) + "\n" != sh.out)
          fail(o, task + " " + name(c) + ": round trip");
      } catch (const std::exception& e) {
        fail(o, task + " " + name(c) + ": " + e.what());
      }
    }
    const Shell push = cli("push --parabolic 1 --type " + c.label + trunc);
    ++tables;
    try {
      const Json j = Json::parse(push.out);
      for (const auto& [alpha, r] : j.at("results").items())
        if (!r["zero"].get<bool>() && !(to_json(*s.sys, vector_from_json(*s.sys, r["weights"])) == r["weights"]))
          fail(o, "push " + name(c) + ": round trip at " + alpha);
    } catch (const std::exception& e) {
      fail(o, "push " + name(c) + ": " + e.what());
    }
  }
  if (o.ok) o.detail = "verify A3 ball 6 byte-identical, exit 0; " + std::to_string(tables) + " tables round-trip";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 tilting weights equal KL Laurent forms", kl_agreement},
      {"2 P(s2, s2s1s3s2) in S4", specific_value},
      {"3 Ringel inversion", ringel},
      {"4 push-forward dichotomy", pushforward},
      {"5 uniqueness under mutation", uniqueness},
      {"6 infrastructure properties", infrastructure},
      {"7 CLI determinism and round trip", cli_determinism},
  };
  // time budgets in seconds; criteria without one only need to finish
  const std::map<std::string, double> budget = {{"1", 60.0}, {"2", 5.0}};
  int failed = 0;
  for (const auto& [title, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string id = title.substr(0, 1);
    if (auto it = budget.find(id); it != budget.end() && secs > it->second) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(it->second)) + " s budget)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << title << " [" << timing << "]: " << o.detail
              << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
