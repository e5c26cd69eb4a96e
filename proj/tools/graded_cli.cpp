#include "graded/errors.hpp"
#include "graded/grading.hpp"
#include "graded/involution.hpp"
#include "graded/weyl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace graded;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  long ms() const {
    auto d = std::chrono::steady_clock::now() - start;
    return (long)std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }
};

// timing goes to stderr so stdout stays byte-stable for fixed inputs
void report_time(const char* what, const Stopwatch& sw) {
  std::cerr << "[graded] " << what << " finished in " << sw.ms() << " ms\n";
}

std::vector<unsigned> prime_power_parts(unsigned long v) {
  std::vector<unsigned> parts;
  for (unsigned long p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    unsigned long pk = 1;
    while (v % p == 0) {
      pk *= p;
      v /= p;
    }
    parts.push_back((unsigned)pk);
  }
  if (v > 1) parts.push_back((unsigned)v);
  return parts;
}

// factor list -> symplectic type; every prime-power component must pair up
TorsionGroup group_from_factors(const std::vector<unsigned long>& factors) {
  std::map<unsigned, unsigned> count;
  for (unsigned long f : factors) {
    if (f < 2) throw std::domain_error("torsion factors must be at least 2");
    for (unsigned pk : prime_power_parts(f)) ++count[pk];
  }
  TorsionGroup T;
  for (auto [pk, c] : count) {
    if (c % 2) throw std::domain_error("torsion factors do not pair into a symplectic group");
    for (unsigned i = 0; i < c / 2; ++i) T.ell.push_back(pk);
  }
  return T;
}

// "trivial", an elementary-2 rank, or a comma separated factor list like 3,3
TorsionGroup group_from_text(const std::string& text) {
  if (text.empty() || text == "trivial") return TorsionGroup{};
  if (text.find(',') == std::string::npos) {
    size_t used = 0;
    unsigned long r = std::stoul(text, &used);
    if (used != text.size()) throw std::domain_error("bad torsion group text: " + text);
    if (r > 12) throw std::domain_error("elementary rank out of range: " + text);
    return TorsionGroup{std::vector<unsigned>((size_t)r, 2u)};
  }
  std::vector<unsigned long> factors;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) factors.push_back(std::stoul(item));
  return group_from_factors(factors);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct SpecFlags {
  std::string series;
  std::string T = "trivial";
  unsigned k = 1;
  unsigned q = 0;
  unsigned s = 0;
  std::string tau;
  int delta = 0;  // 0 picks the series default
};

GradingSpec spec_from_flags(const SpecFlags& f) {
  auto series = series_from_name(f.series);
  if (!series) throw std::domain_error("unknown series: " + f.series);
  GradingSpec spec;
  spec.series = *series;
  spec.group = group_from_text(f.T);
  if (spec.phi_type()) {
    spec.q = f.q;
    spec.s = f.s;
    for (const std::string& w : split_commas(f.tau))
      spec.tau.push_back(parse_element(spec.group, w));
    if (spec.tau.empty() && spec.group.rank() == 0)
      spec.tau.assign(spec.q, TorsionElement::identity(spec.group));
    spec.delta = f.delta != 0 ? f.delta : (spec.series == Series::C ? -1 : +1);
  } else {
    spec.k = f.k;
  }
  validate_spec(spec, /*allow_sl2=*/true);
  return spec;
}

json spec_to_json(const GradingSpec& spec) {
  json out;
  out["series"] = series_name(spec.series);
  if (spec.phi_type()) {
    out["r"] = spec.group.rank();
    out["q"] = spec.q;
    out["s"] = spec.s;
    json tau = json::array();
    for (const TorsionElement& t : spec.tau) tau.push_back(render_element(spec.group, t));
    out["tau"] = std::move(tau);
    out["delta"] = spec.delta;
  } else {
    json T = json::array();
    for (unsigned l : spec.group.ell) {
      T.push_back(l);
      T.push_back(l);
    }
    out["T"] = std::move(T);
    out["k"] = spec.k;
  }
  return out;
}

GradingSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw std::domain_error("spec must be a json object");
  auto series = series_from_name(j.value("series", std::string{}));
  if (!series) throw std::domain_error("spec is missing a valid series field");
  GradingSpec spec;
  spec.series = *series;
  if (spec.phi_type()) {
    unsigned r = j.value("r", 0u);
    if (r > 12) throw std::domain_error("elementary rank out of range");
    spec.group.ell.assign(r, 2u);
    spec.q = j.value("q", 0u);
    spec.s = j.value("s", 0u);
    if (j.contains("tau"))
      for (const json& w : j.at("tau"))
        spec.tau.push_back(parse_element(spec.group, w.get<std::string>()));
    if (spec.tau.empty() && spec.group.rank() == 0)
      spec.tau.assign(spec.q, TorsionElement::identity(spec.group));
    spec.delta = j.value("delta", spec.series == Series::C ? -1 : +1);
  } else {
    std::vector<unsigned long> factors;
    if (j.contains("T"))
      for (const json& f : j.at("T")) factors.push_back(f.get<unsigned long>());
    spec.group = group_from_factors(factors);
    spec.k = j.value("k", 1u);
  }
  validate_spec(spec, /*allow_sl2=*/true);
  return spec;
}

std::string spec_line(const GradingSpec& spec) {
  std::ostringstream os;
  os << series_name(spec.series);
  if (spec.phi_type()) {
    os << " r=" << spec.group.rank() << " q=" << spec.q << " s=" << spec.s << " tau=";
    if (spec.tau.empty()) os << "-";
    for (size_t i = 0; i < spec.tau.size(); ++i)
      os << (i ? "," : "") << render_element(spec.group, spec.tau[i]);
    os << " delta=" << (spec.delta > 0 ? "+1" : "-1");
  } else {
    os << " T=[";
    for (size_t i = 0; i < spec.group.ell.size(); ++i)
      os << (i ? "," : "") << spec.group.ell[i] << "," << spec.group.ell[i];
    os << "] k=" << spec.k;
  }
  return os.str();
}

json presentation_to_json(const UniversalPresentation& up) {
  json out;
  out["Z2"] = up.two_rank;
  out["Z4"] = up.four_rank;
  out["Z"] = up.free_rank;
  bool plain = true;
  for (unsigned long d : up.invariants.torsion) plain = plain && (d == 2 || d == 4);
  if (!plain) {
    json t = json::array();
    for (unsigned long d : up.invariants.torsion) t.push_back(d);
    out["torsion"] = std::move(t);
  }
  return out;
}

json support_to_json(const GradedMatrixAlgebra& R) {
  json rows = json::array();
  for (const auto& [z, basis] : R.components()) {
    json row;
    row["i"] = z.i;
    row["j"] = z.j;
    row["t"] = render_element(R.spec().group, z.t);
    row["dim"] = basis.size();
    rows.push_back(std::move(row));
  }
  return rows;
}

json term_to_json(const WeylTerm& t) {
  json out;
  if (!t.op.empty()) out["op"] = t.op;
  if (!t.name.empty()) out["name"] = t.name;
  if (!t.parts.empty()) {
    json parts = json::array();
    for (const WeylTerm& p : t.parts) parts.push_back(term_to_json(p));
    out["parts"] = std::move(parts);
  }
  out["order"] = t.order.get_str();
  return out;
}

std::string term_to_text(const WeylTerm& t) {
  if (t.op.empty()) return t.name + "[" + t.order.get_str() + "]";
  const char* sym = t.op == "direct"      ? " x "
                    : t.op == "semidirect" ? " : "
                    : t.op == "wreath"     ? " wr "
                                           : " . ";
  std::string s = t.name.empty() ? std::string{} : t.name;
  s += "(";
  for (size_t i = 0; i < t.parts.size(); ++i) {
    if (i) s += sym;
    s += term_to_text(t.parts[i]);
  }
  s += ")[" + t.order.get_str() + "]";
  return s;
}

json witness_to_json(const TorsionGroup& T, const AffineSymplectic& w) {
  json out;
  out["shift"] = render_element(T, w.shift);
  json imgs = json::array();
  for (const TorsionElement& im : w.map.images) imgs.push_back(render_element(T, im));
  out["map"] = std::move(imgs);
  return out;
}

struct EnumerateOpts {
  std::string series;
  unsigned n = 0;
  std::string format = "json";
};

int run_enumerate(const EnumerateOpts& opt) {
  Stopwatch sw;
  std::vector<GradingSpec> classes;
  if (opt.series == "A") {
    classes = enumerate_fine_gradings(Series::AI, opt.n);
    std::vector<GradingSpec> more = enumerate_fine_gradings(Series::AII, opt.n);
    classes.insert(classes.end(), more.begin(), more.end());
  } else {
    auto series = series_from_name(opt.series);
    if (!series) throw std::domain_error("unknown series: " + opt.series);
    classes = enumerate_fine_gradings(*series, opt.n);
  }

  if (opt.format == "table") {
    for (size_t i = 0; i < classes.size(); ++i)
      std::cout << (i + 1) << "  " << spec_line(classes[i]) << "\n";
    std::cout << "count " << classes.size() << "\n";
  } else {
    json out;
    out["command"] = "enumerate";
    out["series"] = opt.series;
    out["n"] = opt.n;
    out["count"] = classes.size();
    json rows = json::array();
    for (const GradingSpec& spec : classes) {
      json row;
      row["spec"] = spec_to_json(spec);
      row["universal"] = presentation_to_json(universal_group(spec));
      rows.push_back(std::move(row));
    }
    out["classes"] = std::move(rows);
    std::cout << out.dump(2) << "\n";
  }
  report_time("enumerate", sw);
  return 0;
}

struct WeylOpts {
  std::string spec_json;
  SpecFlags flags;
  bool verify = false;
  unsigned long bound = 1'000'000;
  std::string format = "json";
};

int run_weyl(const WeylOpts& opt) {
  Stopwatch sw;
  if (!opt.spec_json.empty() && !opt.flags.series.empty())
    throw std::domain_error("give either a spec argument or spec flags, not both");
  if (opt.spec_json.empty() && opt.flags.series.empty())
    throw std::domain_error("weyl needs a spec argument or --series");
  GradingSpec spec = opt.spec_json.empty() ? spec_from_flags(opt.flags)
                                           : spec_from_json(json::parse(opt.spec_json));

  WeylDescription desc = weyl_closed_form(spec);
  GradedMatrixAlgebra R = build_algebra(spec);
  UniversalPresentation up = universal_group(spec);

  std::optional<WeylClosure> closure;
  if (opt.verify) closure = brute_force_weyl(spec, 600, opt.bound);
  bool equal = !closure || closure->order == desc.order;

  if (opt.format == "table") {
    std::cout << "spec: " << spec_line(spec) << "\n";
    std::cout << "weyl order: " << desc.order.get_str() << "\n";
    std::cout << "term: " << term_to_text(desc.term) << "\n";
    if (closure) {
      std::cout << "brute force: " << closure->order.get_str() << " (quotient "
                << closure->quotient_order.get_str() << ", kernel rank " << closure->kernel_rank
                << ")\n";
      std::cout << "verdict: " << (equal ? "equal" : "unequal") << "\n";
    }
  } else {
    json out;
    out["command"] = "weyl";
    out["spec"] = spec_to_json(spec);
    out["universal"] = presentation_to_json(up);
    out["support"] = support_to_json(R);
    out["weyl"] = term_to_json(desc.term);
    if (closure) {
      json v;
      v["closed_form"] = desc.order.get_str();
      v["brute_force"] = closure->order.get_str();
      v["quotient_order"] = closure->quotient_order.get_str();
      v["kernel_rank"] = closure->kernel_rank;
      v["verdict"] = equal ? "equal" : "unequal";
      out["verify"] = std::move(v);
    }
    std::cout << out.dump(2) << "\n";
  }
  report_time("weyl", sw);
  if (!equal) {
    std::cerr << "graded: brute-force order disagrees with the closed form\n";
    return 3;
  }
  return 0;
}

struct EquivOpts {
  std::string a;
  std::string b;
  bool weak = false;
  std::string format = "json";
};

bool involution_series(Series s) {
  return s == Series::B || s == Series::C || s == Series::D;
}

int run_equiv(const EquivOpts& opt) {
  Stopwatch sw;
  GradingSpec a = spec_from_json(json::parse(opt.a));
  GradingSpec b = spec_from_json(json::parse(opt.b));

  EquivalenceWitness w;
  std::string mode;
  if (!a.phi_type() || !b.phi_type()) {
    // block gradings carry no sesquilinear data; classes match on (T, k)
    mode = "weak";
    w.equivalent = !a.phi_type() && !b.phi_type() && a.group == b.group && a.k == b.k;
    if (w.equivalent) w.transporter = affine_identity(a.group);
  } else if (!opt.weak && involution_series(a.series) && involution_series(b.series)) {
    mode = "involution";
    w = equivalent_involution_witness(a, b);
  } else {
    mode = "weak";
    w = weakly_equivalent_witness(a, b);
  }

  if (opt.format == "table") {
    std::cout << "spec1: " << spec_line(a) << "\n";
    std::cout << "spec2: " << spec_line(b) << "\n";
    std::cout << "mode: " << mode << "\n";
    std::cout << "equivalent: " << (w.equivalent ? "yes" : "no") << "\n";
    if (w.transporter) {
      std::cout << "witness: shift=" << render_element(a.group, w.transporter->shift) << " map=";
      for (size_t i = 0; i < w.transporter->map.images.size(); ++i)
        std::cout << (i ? "," : "") << render_element(a.group, w.transporter->map.images[i]);
      std::cout << "\n";
    }
  } else {
    json out;
    out["command"] = "equiv";
    out["mode"] = mode;
    out["spec1"] = spec_to_json(a);
    out["spec2"] = spec_to_json(b);
    out["equivalent"] = w.equivalent;
    out["witness"] = w.transporter ? witness_to_json(a.group, *w.transporter) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  }
  report_time("equiv", sw);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fine gradings of matrix and classical Lie algebras"};
  app.require_subcommand(1);

  EnumerateOpts eo;
  WeylOpts wo;
  EquivOpts qo;
  int rc = 0;

  CLI::App* en = app.add_subcommand("enumerate", "list the fine grading classes at a given size");
  en->add_option("--series", eo.series, "series letter: A, AI, AII, B, C or D")->required();
  en->add_option("--n", eo.n, "matrix or form size")->required();
  en->add_option("--format", eo.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  en->callback([&] { rc = run_enumerate(eo); });

  CLI::App* wy = app.add_subcommand("weyl", "closed-form Weyl group of one grading");
  wy->add_option("spec", wo.spec_json, "canonical spec as json");
  wy->add_option("--series", wo.flags.series, "AI, AII, B, C or D");
  wy->add_option("--T", wo.flags.T, "elementary-2 rank or factor list, e.g. 2 or 3,3");
  wy->add_option("--k", wo.flags.k, "block count (AI)");
  wy->add_option("--q", wo.flags.q, "diagonal block count");
  wy->add_option("--s", wo.flags.s, "pair block count");
  wy->add_option("--tau", wo.flags.tau, "comma separated entries, e.g. e,10,11");
  wy->add_option("--delta", wo.flags.delta, "form sign")->check(CLI::IsMember({-1, 1}));
  wy->add_flag("--verify", wo.verify, "cross-check against the support-action closure");
  wy->add_option("--bound", wo.bound, "element bound for the closure");
  wy->add_option("--format", wo.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  wy->callback([&] { rc = run_weyl(wo); });

  CLI::App* eq = app.add_subcommand("equiv", "decide equivalence of two gradings");
  eq->add_option("spec1", qo.a, "first spec as json")->required();
  eq->add_option("spec2", qo.b, "second spec as json")->required();
  eq->add_flag("--weak", qo.weak, "compare the gradings without the involution");
  eq->add_option("--format", qo.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  eq->callback([&] { rc = run_equiv(qo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "graded: bad json: " << e.what() << "\n";
    return 2;
  } catch (const verification_error& e) {
    std::cerr << "graded: verification failed: " << e.what() << "\n";
    return 3;
  } catch (const resource_error& e) {
    std::cerr << "graded: resource bound hit: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "graded: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "graded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "graded: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
