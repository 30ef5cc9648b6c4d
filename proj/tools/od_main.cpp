#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "od/harness.hpp"
#include "od/order.hpp"
#include "od/report.hpp"
#include "od/subst.hpp"
#include "od/term.hpp"
#include "od/wf.hpp"

namespace {

using namespace od;

struct Common {
  std::string system = "p3";
  std::string output = "text";

  Flavor flavor() const {
    if (system == "m") return Flavor::M;
    if (system == "p3") return Flavor::P3;
    return Flavor::P4;
  }
  OutputMode mode() const {
    return output == "structured" ? OutputMode::Structured : OutputMode::Text;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--system", c.system, "term system: m, p3 or p4")
      ->check(CLI::IsMember({"m", "p3", "p4"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "output form: text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
}

std::vector<TermPtr> parse_all(const std::vector<std::string>& texts,
                               Flavor flavor) {
  std::vector<TermPtr> out;
  out.reserve(texts.size());
  for (const auto& s : texts) out.push_back(parse(s, flavor));
  return out;
}

const char* ordering_word(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

int run_cmp(const Common& c, const std::string& a, const std::string& b) {
  OrderCache cache;
  Flavor f = c.flavor();
  Ordering o = compare(parse(a, f), parse(b, f), f, &cache);
  if (c.mode() == OutputMode::Structured)
    std::cout << "verdict=" << ordering_word(o) << "\n";
  else
    std::cout << ordering_symbol(o) << "\n";
  return 0;
}

int run_nf(const Common& c, const std::string& text) {
  OrderCache cache;
  Flavor f = c.flavor();
  std::string r = render(normalize(parse(text, f), f, &cache));
  if (c.mode() == OutputMode::Structured)
    std::cout << "term=" << r << "\n";
  else
    std::cout << r << "\n";
  return 0;
}

int run_kset(const Common& c, const std::string& sigma_text,
             const std::string& alpha_text) {
  Flavor f = c.flavor();
  TermPtr sigma = parse(sigma_text, f);
  TermPtr alpha = parse(alpha_text, f);
  if (!is_regular(sigma))
    throw std::invalid_argument("the first argument must be a regular term");
  KSet ks = kset(sigma, alpha);
  if (c.mode() == OutputMode::Structured) {
    std::cout << "count=" << ks.size() << "\n";
    for (const auto& m : ks.members) std::cout << "member=" << render(m) << "\n";
  } else {
    for (const auto& m : ks.members) std::cout << render(m) << "\n";
  }
  return 0;
}

int run_subst(const Common& c, const std::string& target_text,
              const std::string& xi_text) {
  OrderCache cache;
  Flavor f = c.flavor();
  Substitution sub = make_subst(parse(target_text, f), f, &cache);
  TermPtr xi = parse(xi_text, f);
  bool dom = in_domain(sub, xi, &cache);
  TermPtr image = apply(sub, xi, &cache);
  if (c.mode() == OutputMode::Structured) {
    std::cout << "in_domain=" << (dom ? "true" : "false") << "\n"
              << "image=" << render(image) << "\n";
  } else {
    std::cout << render(image) << "\n";
    if (!dom) std::cerr << "note: argument lies outside the domain\n";
  }
  return 0;
}

int run_check(const Common& c, std::size_t max_size, std::size_t triples,
              bool with_adm, bool invert) {
  OrderCache cache;
  Flavor f = c.flavor();
  PoolConfig pool;
  pool.adm = with_adm;
  std::vector<TermPtr> frag = enumerate_fragment(f, max_size, pool, &cache);

  CheckReport merged;
  merged.flavor = f;
  merged.fragment_size = frag.size();
  if (invert) {
    // deliberately defective comparison: the checker must call it out
    CheckReport laws = check_order_laws_with(
        frag,
        [](const TermPtr& a, const TermPtr& b) {
          return eq(a, b) ? Ordering::Equal : Ordering::Less;
        },
        triples);
    laws.flavor = f;
    merged = laws;
    merged.label = "order-laws (deliberately broken comparator)";
    if (c.mode() == OutputMode::Text)
      std::cout << format_report(merged, OutputMode::Text);
  } else {
    CheckReport laws = check_order_laws(frag, f, triples, &cache);
    CheckReport bounds = check_axioms(frag, f, &cache);
    merged.label = "order-laws and collapse-bounds";
    merged.pairs = laws.pairs + bounds.pairs;
    merged.elapsed_ms = laws.elapsed_ms + bounds.elapsed_ms;
    merged.violations = laws.violations;
    merged.violations.insert(merged.violations.end(),
                             bounds.violations.begin(),
                             bounds.violations.end());
    if (c.mode() == OutputMode::Text) {
      std::cout << format_report(laws, OutputMode::Text);
      std::cout << format_report(bounds, OutputMode::Text);
    }
  }
  if (c.mode() == OutputMode::Structured)
    std::cout << format_report(merged, OutputMode::Structured);
  return merged.pass() ? 0 : 1;
}

int run_chains(const Common& c, const std::string& seed_text,
               std::size_t budget, const std::string& strategy,
               const std::vector<std::string>& pool_texts,
               std::uint64_t rng_seed) {
  OrderCache cache;
  Flavor f = c.flavor();
  DescentStrategy strat = DescentStrategy::Greedy;
  if (strategy == "random") strat = DescentStrategy::Random;
  if (strategy == "exhaustive") strat = DescentStrategy::Exhaustive;
  std::vector<std::string> pt = pool_texts;
  if (pt.empty()) pt = {"0", "pi"};
  std::vector<TermPtr> pool = parse_all(pt, f);
  std::vector<TermPtr> chain = search_descending(
      parse(seed_text, f), f, strat, pool, budget, rng_seed, &cache);
  if (c.mode() == OutputMode::Structured) {
    std::cout << "length=" << chain.size() << "\n";
    for (const auto& s : chain) std::cout << "step=" << render(s) << "\n";
  } else {
    for (const auto& s : chain) std::cout << render(s) << "\n";
  }
  return 0;
}

int run_succ(const Common& c, std::size_t budget, std::uint64_t seed,
             const std::string& pick, const std::vector<std::string>& args,
             const std::vector<std::string>& stages,
             const std::vector<std::string>& stages3) {
  OrderCache cache;
  Flavor f = c.flavor();
  SuccessionPolicy pol;
  std::vector<std::string> a = args;
  std::vector<std::string> s = stages;
  std::vector<std::string> s3 = stages3;
  if (a.empty()) a = {"0", "pi", "phi(0,0)"};
  if (s.empty()) s = {"0", "phi(0,0)", "phi(0,phi(0,0))"};
  if (s3.empty()) s3 = s;
  pol.arg_pool = parse_all(a, f);
  pol.stage_pool = parse_all(s, f);
  pol.stage3_pool = parse_all(s3, f);
  pol.pick = pick == "random" ? Pick::Random : Pick::First;
  SuccessionTrace tr = run_succession(f, pol, budget, seed, &cache);
  const char* why =
      tr.reason == HaltReason::NoLegalExtension ? "halted" : "budget";
  if (c.mode() == OutputMode::Structured) {
    std::cout << "steps=" << tr.steps.size() << " reason=" << why << "\n";
    for (const auto& st : tr.steps) std::cout << "step=" << render(st) << "\n";
  } else {
    for (const auto& st : tr.steps) std::cout << render(st) << "\n";
    std::cout << "(" << why << " after " << tr.steps.size() << " steps)\n";
  }
  return 0;
}

int run_enum(const Common& c, std::size_t max_size, bool with_adm) {
  OrderCache cache;
  Flavor f = c.flavor();
  PoolConfig pool;
  pool.adm = with_adm;
  std::vector<TermPtr> frag = enumerate_fragment(f, max_size, pool, &cache);
  if (c.mode() == OutputMode::Structured) {
    std::cout << "count=" << frag.size() << "\n";
    for (const auto& t : frag) std::cout << "term=" << render(t) << "\n";
  } else {
    for (const auto& t : frag) std::cout << render(t) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordinal notation toolkit: compare, canonicalize and check "
               "collapse-style terms"};
  app.require_subcommand(1);

  Common c_cmp, c_nf, c_kset, c_subst, c_check, c_chains, c_succ, c_enum;

  std::string cmp_a, cmp_b;
  CLI::App* cmd_cmp = app.add_subcommand("cmp", "compare two terms");
  cmd_cmp->add_option("a", cmp_a, "left term")->required();
  cmd_cmp->add_option("b", cmp_b, "right term")->required();
  add_common(cmd_cmp, c_cmp);

  std::string nf_term;
  CLI::App* cmd_nf = app.add_subcommand("nf", "print the canonical form");
  cmd_nf->add_option("term", nf_term, "term to canonicalize")->required();
  add_common(cmd_nf, c_nf);

  std::string kset_sigma, kset_alpha;
  CLI::App* cmd_kset = app.add_subcommand(
      "kset", "list the collapses tracked through a regular term");
  cmd_kset->add_option("sigma", kset_sigma, "regular term")->required();
  cmd_kset->add_option("alpha", kset_alpha, "term to inspect")->required();
  add_common(cmd_kset, c_kset);

  std::string subst_target, subst_term;
  CLI::App* cmd_subst =
      app.add_subcommand("subst", "apply the pi-to-target substitution");
  cmd_subst->add_option("--target", subst_target, "image of pi")->required();
  cmd_subst->add_option("term", subst_term, "term to map")->required();
  add_common(cmd_subst, c_subst);

  std::size_t check_max = 6;
  std::size_t check_triples = 100000;
  bool check_adm = false;
  bool check_invert = false;
  CLI::App* cmd_check = app.add_subcommand(
      "check", "exhaustively verify the order laws and collapse bounds");
  cmd_check->add_option("--max-size", check_max, "fragment node-count bound")
      ->capture_default_str();
  cmd_check
      ->add_option("--triples", check_triples,
                   "transitivity triples to sample")
      ->capture_default_str();
  cmd_check->add_flag("--with-adm", check_adm,
                      "include next-admissible terms in the fragment");
  cmd_check->add_flag("--invert-comparator", check_invert,
                      "judge with a deliberately broken comparison to show "
                      "violations are caught");
  add_common(cmd_check, c_check);

  std::string chains_seed;
  std::size_t chains_budget = 64;
  std::string chains_strategy = "greedy";
  std::vector<std::string> chains_pool;
  std::uint64_t chains_rng = 0;
  CLI::App* cmd_chains = app.add_subcommand(
      "chains", "walk a strictly descending chain from a term");
  cmd_chains->add_option("--seed", chains_seed, "starting term")->required();
  cmd_chains->add_option("--budget", chains_budget, "maximum steps")
      ->capture_default_str();
  cmd_chains
      ->add_option("--strategy", chains_strategy,
                   "greedy, random or exhaustive")
      ->check(CLI::IsMember({"greedy", "random", "exhaustive"}))
      ->capture_default_str();
  cmd_chains->add_option("--pool", chains_pool,
                         "replacement terms (repeatable)");
  cmd_chains->add_option("--rng", chains_rng, "seed for the random strategy")
      ->capture_default_str();
  add_common(cmd_chains, c_chains);

  std::size_t succ_budget = 32;
  std::uint64_t succ_seed = 0;
  std::string succ_pick = "first";
  std::vector<std::string> succ_args, succ_stages, succ_stages3;
  CLI::App* cmd_succ = app.add_subcommand(
      "succ", "iterate base collapses from pi until none is legal");
  cmd_succ->add_option("--budget", succ_budget, "maximum steps")
      ->capture_default_str();
  cmd_succ->add_option("--seed", succ_seed, "seed for random picking")
      ->capture_default_str();
  cmd_succ->add_option("--pick", succ_pick, "first or random")
      ->check(CLI::IsMember({"first", "random"}))
      ->capture_default_str();
  cmd_succ->add_option("--arg", succ_args, "argument pool (repeatable)");
  cmd_succ->add_option("--stage", succ_stages, "stage pool (repeatable)");
  cmd_succ->add_option("--stage3", succ_stages3,
                       "level-3 stage pool (repeatable)");
  add_common(cmd_succ, c_succ);

  std::size_t enum_max = 5;
  bool enum_adm = false;
  CLI::App* cmd_enum = app.add_subcommand(
      "enum", "list every well-formed canonical term up to a size");
  cmd_enum->add_option("--max-size", enum_max, "fragment node-count bound")
      ->capture_default_str();
  cmd_enum->add_flag("--with-adm", enum_adm,
                     "include next-admissible terms in the fragment");
  add_common(cmd_enum, c_enum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_cmp->parsed()) return run_cmp(c_cmp, cmp_a, cmp_b);
    if (cmd_nf->parsed()) return run_nf(c_nf, nf_term);
    if (cmd_kset->parsed()) return run_kset(c_kset, kset_sigma, kset_alpha);
    if (cmd_subst->parsed())
      return run_subst(c_subst, subst_target, subst_term);
    if (cmd_check->parsed())
      return run_check(c_check, check_max, check_triples, check_adm,
                       check_invert);
    if (cmd_chains->parsed())
      return run_chains(c_chains, chains_seed, chains_budget, chains_strategy,
                        chains_pool, chains_rng);
    if (cmd_succ->parsed())
      return run_succ(c_succ, succ_budget, succ_seed, succ_pick, succ_args,
                      succ_stages, succ_stages3);
    if (cmd_enum->parsed()) return run_enum(c_enum, enum_max, enum_adm);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
