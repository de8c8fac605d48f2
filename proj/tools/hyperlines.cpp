#include <chrono>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperlines/formspace.hpp"
#include "hyperlines/geometry_io.hpp"
#include "hyperlines/polar_space.hpp"
#include "hyperlines/report_io.hpp"
#include "hyperlines/theorem_engine.hpp"

using namespace hyperlines;

namespace {

// exit codes: 0 pass, 1 failed checked condition, 2 input error, 3 size guard
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

constexpr int kMaxPoints = 5000;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }
};

bool prime_power(int q, int& p, int& k) {
  if (q < 2) return false;
  p = q;
  for (int c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      break;
    }
  }
  k = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  return r == 1;
}

FormFamily family_from(const std::string& name) {
  if (name == "symplectic") return FormFamily::symplectic;
  if (name == "hermitian") return FormFamily::hermitian;
  if (name == "parabolic") return FormFamily::orthogonal_parabolic;
  if (name == "hyperbolic") return FormFamily::orthogonal_hyperbolic;
  if (name == "elliptic") return FormFamily::orthogonal_elliptic;
  throw std::invalid_argument("unknown family " + name);
}

FischerKind fischer_from(const std::string& name) {
  if (name == "symplectic_f2") return FischerKind::symplectic_f2;
  if (name == "unitary_f4") return FischerKind::unitary_f4;
  if (name == "orthogonal_f2") return FischerKind::orthogonal_f2;
  if (name == "orthogonal_f3") return FischerKind::orthogonal_f3;
  throw std::invalid_argument("unknown construction kind " + name);
}

int input_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitInput;
}

/// Instance descriptor for reports: the filename without its directory, so
/// identical inputs give identical reports wherever they live.
std::string instance_name(const std::string& path) {
  std::size_t cut = path.find_last_of("/\\");
  return cut == std::string::npos ? path : path.substr(cut + 1);
}

void print_counts(const PartialLinearSpace& pls) {
  std::cout << "n=" << pls.n() << " m=" << pls.num_lines() << "\n";
}

struct ConstructArgs {
  std::string family;
  int d = 0;
  int q = 0;
  bool polar = false;
  bool hyperbolic = false;
  std::string fischer;  // empty unless --fischer given
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  int picked = (a.polar ? 1 : 0) + (a.hyperbolic ? 1 : 0) + (a.fischer.empty() ? 0 : 1);
  if (picked != 1) return input_error("pick exactly one of --polar, --hyperbolic, --fischer");
  if (a.out.empty()) return input_error("--out is required");
  if (a.d <= 0) return input_error("-d is required and must be positive");

  if (!a.fischer.empty()) {
    FormFamily variant = FormFamily::orthogonal_parabolic;
    if (!a.family.empty()) variant = family_from(a.family);
    FischerSpace fs{PartialLinearSpace(0, {}), {}, {}};
    try {
      fs = build_fischer_space(fischer_from(a.fischer), a.d, variant);
    } catch (const std::invalid_argument& e) {
      std::string what = e.what();
      if (what.find("too many points") != std::string::npos ||
          what.find("dimension too large") != std::string::npos) {
        std::cerr << "error: " << what << "\n";
        return kExitGuard;
      }
      return input_error(what);
    }
    write_pls_file(fs.full, a.out);
    std::cout << "n=" << fs.full.n() << " m=" << fs.full.num_lines()
              << " components=" << fs.components.size() << "\n";
    if (fs.components.size() > 1) {
      std::string base = a.out;
      if (base.size() > 4 && base.substr(base.size() - 4) == ".pls")
        base.resize(base.size() - 4);
      for (std::size_t i = 0; i < fs.components.size(); ++i) {
        std::string path = base + ".comp" + std::to_string(i) + ".pls";
        write_pls_file(fs.components[i], path);
        std::cout << "component " << i << ": n=" << fs.components[i].n()
                  << " m=" << fs.components[i].num_lines() << " -> " << path << "\n";
      }
    }
    return kExitPass;
  }

  if (a.family.empty()) return input_error("--family is required");
  int p = 0, k = 0;
  if (!prime_power(a.q, p, k)) return input_error("-q must be a prime power (got " +
                                                  std::to_string(a.q) + ")");
  GramForm form = standard_form(family_from(a.family), a.d, FiniteField(p, k));
  if (static_cast<int>(isotropic_points(form).size()) > kMaxPoints) {
    std::cerr << "error: instance exceeds " << kMaxPoints << " points\n";
    return kExitGuard;
  }
  PolarSpace S = build_polar(form);
  PartialLinearSpace out = a.polar ? PartialLinearSpace(S.num_points(), S.lines())
                                   : hyperbolic_geometry(S);
  write_pls_file(out, a.out);
  print_counts(out);
  return kExitPass;
}

/// Shared entry validation: parse, size guard, structural soundness, at
/// least one line. Returns an exit code, or -1 to proceed.
int load_input(const std::string& path, PartialLinearSpace& pls) {
  pls = read_pls_file(path);
  if (pls.n() > kMaxPoints) {
    std::cerr << "error: instance exceeds " << kMaxPoints << " points\n";
    return kExitGuard;
  }
  auto v = validate_pls(pls);
  if (!v.pass()) return input_error("not a partial linear space (" +
                                    std::to_string(v.violations) + " violations)");
  if (pls.num_lines() == 0) return input_error("geometry has no lines");
  return -1;
}

void emit_report(const std::string& instance, const std::vector<CheckReport>& checks,
                 long long ms, const std::string& out) {
  if (out.empty())
    std::cout << write_report(instance, checks, ms);
  else
    write_report_file(instance, checks, ms, out);
}

int run_check(const std::string& in, const std::string& suite, const std::string& out, int cap) {
  Timer t;
  PartialLinearSpace pls(0, {});
  if (int rc = load_input(in, pls); rc >= 0) return rc;

  std::vector<CheckReport> checks;
  if (suite == "polar-axioms") {
    // the file is read as a polar space: perp = collinear or equal
    std::vector<Bitset> perp;
    perp.reserve(static_cast<std::size_t>(pls.n()));
    for (int x = 0; x < pls.n(); ++x) {
      Bitset b = pls.adj(x);
      b.set(x);
      perp.push_back(std::move(b));
    }
    checks.push_back(validate_pls(pls, cap));
    CheckReport ooa = check_one_or_all(perp, pls.lines(), cap);
    ooa.name = "one_or_all";
    checks.push_back(std::move(ooa));
    CheckReport nd("nondegenerate", cap);
    for (int x = 0; x < pls.n(); ++x)
      if (perp[static_cast<std::size_t>(x)].count() == pls.n()) nd.add_witness({x});
    checks.push_back(std::move(nd));
    CheckReport rk("rank>=2", cap);
    rk.stats["rank"] = abstract_polar_rank(perp, pls);
    if (rk.stats["rank"] < 2) rk.add_witness({static_cast<int>(rk.stats["rank"])});
    checks.push_back(std::move(rk));
  } else {
    PlaneCensus census(pls);
    if (suite == "main")
      checks = check_main_hypotheses(pls, census, cap).conditions;
    else if (suite == "setting31")
      checks = check_setting_3_1(pls, census, cap).conditions;
    else if (suite == "planethm")
      checks = check_planethm_hypotheses(pls, census, cap).conditions;
    else if (suite == "fischer") {
      std::size_t sz = pls.line(0).size();
      for (const auto& l : pls.lines())
        if (l.size() != sz) return input_error("fischer suite needs a constant line size");
      checks = check_fischer_hypotheses(pls, census, static_cast<int>(sz) - 1, cap).conditions;
    } else if (suite == "lemmas") {
      checks = run_property_suite(nullptr, pls, census, cap);
    } else {
      return input_error("unknown suite " + suite);
    }
  }

  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass();
  emit_report(instance_name(in), checks, t.ms(), out);
  return ok ? kExitPass : kExitFail;
}

int run_reconstruct(const std::string& in, const std::string& out, int cap, bool override_hyp) {
  Timer t;
  if (out.empty()) return input_error("--out is required");
  PartialLinearSpace pls(0, {});
  if (int rc = load_input(in, pls); rc >= 0) return rc;

  PlaneCensus census(pls);
  HypothesisReport hyp = check_main_hypotheses(pls, census, cap);
  std::vector<CheckReport> checks = hyp.conditions;
  int rc = kExitPass;

  if (!hyp.overall() && !override_hyp) {
    std::cerr << "hypotheses failed; rerun with --override-hypotheses to reconstruct anyway\n";
    rc = kExitFail;
  } else {
    ReconstructionResult recon = reconstruct_polar(pls, cap);
    CheckReport vm = verify_main_conclusion(pls, recon, cap);
    CheckReport rk("recon(rank>=2)", cap);
    rk.stats["rank"] = recon.rank;
    rk.stats["singular_lines"] = static_cast<long long>(recon.singular_lines.size());
    if (recon.gq) {
      rk.stats["gq_s"] = recon.gq->s;
      rk.stats["gq_t"] = recon.gq->t;
    }
    if (recon.rank < 2) rk.add_witness({recon.rank});
    checks.push_back(recon.clique);
    checks.push_back(recon.one_or_all);
    checks.push_back(recon.nondegenerate);
    checks.push_back(std::move(rk));
    checks.push_back(std::move(vm));
    write_pls_file(recon.pls, out);
    print_counts(recon.pls);
    rc = recon.conclusions_ok() ? kExitPass : kExitFail;
  }
  write_report_file(instance_name(in), checks, t.ms(), out + ".report.json");
  return rc;
}

int run_quotient(const std::string& in, const std::string& out) {
  if (out.empty()) return input_error("--out is required");
  PartialLinearSpace pls(0, {});
  if (int rc = load_input(in, pls); rc >= 0) return rc;

  QuotientResult q = quotient(pls);
  write_pls_file(q.quotient, out);
  write_classmap_file(q.class_map, static_cast<int>(q.classes.size()), out + ".classmap");
  std::cout << "n=" << q.quotient.n() << " m=" << q.quotient.num_lines()
            << " classes=" << q.classes.size() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar spaces, hyperbolic-line geometries and their checkers"};
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "build a geometry file");
  construct->add_option("--family", ca.family,
                        "symplectic, hermitian, parabolic, hyperbolic or elliptic");
  construct->add_option("-d", ca.d, "vector space dimension");
  construct->add_option("-q", ca.q, "field order (prime power, at most 32)");
  construct->add_flag("--polar", ca.polar, "write the polar space");
  construct->add_flag("--hyperbolic", ca.hyperbolic, "write its hyperbolic-line geometry");
  construct
      ->add_option("--fischer", ca.fischer,
                   "write a three-point-line space: symplectic_f2, unitary_f4, orthogonal_f2 "
                   "or orthogonal_f3 (--family picks the quadric for the orthogonal kinds)")
      ->expected(1);
  construct->add_option("--out", ca.out, "output path");

  std::string check_in, check_suite, check_out;
  int cap = 10;
  long long seed = 0;
  CLI::App* check = app.add_subcommand("check", "run a hypothesis or lemma suite");
  check->add_option("input", check_in, "geometry file")->required();
  check->add_option("--suite", check_suite, "main, setting31, planethm, fischer, polar-axioms "
                                            "or lemmas")->required();
  check->add_option("--out", check_out, "report path (default: stdout)");

  std::string rec_in, rec_out;
  bool override_hyp = false;
  CLI::App* rec = app.add_subcommand("reconstruct", "rebuild the polar space from double perps");
  rec->add_option("input", rec_in, "geometry file")->required();
  rec->add_option("--out", rec_out, "output path (report lands beside it)");
  rec->add_flag("--override-hypotheses", override_hyp,
                "reconstruct even when the hypothesis checks fail");

  std::string quo_in, quo_out;
  CLI::App* quo = app.add_subcommand("quotient", "collapse perp-twin points");
  quo->add_option("input", quo_in, "geometry file")->required();
  quo->add_option("--out", quo_out, "output path (class map lands beside it)");

  for (CLI::App* sub : {construct, check, rec, quo}) {
    sub->add_option("--witness-cap", cap, "witnesses kept per check")->capture_default_str();
    sub->add_option("--seed", seed, "reserved; all algorithms are deterministic");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInput;  // help stays 0, bad usage is an input error
  }
  if (cap < 0) return input_error("--witness-cap must be non-negative");

  try {
    if (construct->parsed()) return run_construct(ca);
    if (check->parsed()) return run_check(check_in, check_suite, check_out, cap);
    if (rec->parsed()) return run_reconstruct(rec_in, rec_out, cap, override_hyp);
    return run_quotient(quo_in, quo_out);
  } catch (const ParseError& e) {
    return input_error(e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  } catch (const std::domain_error& e) {
    return input_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
