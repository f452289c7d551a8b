// natdual: command-line front end. Exit status 0 means the property holds
// (or the command produced its output), 1 that it was falsified, with the
// witness in the report, 2 an input or budget error.
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "natdual/catalog.hpp"
#include "natdual/corpus.hpp"
#include "natdual/dualizability.hpp"
#include "natdual/io.hpp"

namespace {

using namespace natdual;
using json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFalsified = 1;
constexpr int kInputError = 2;

struct Options {
  std::string dualizer;
  std::optional<std::size_t> k;
  std::optional<std::size_t> bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::string format = "text";
  std::string strategy = "auto";
  std::size_t samples = 500;
  std::optional<int> only;
  std::vector<std::string> inputs;

  Budget limits() const {
    Budget b;
    if (budget) b.closure_limit = *budget;
    return b;
  }
};

// ---- output ----

void emit(const json& report, const Options& o) {
  if (o.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.items()) std::cout << key << ": " << value.dump() << "\n";
}

// Documents are already `key: value` lines; JSON mode turns them into an
// object with the same fields.
void emit_document(const std::string& text, const Options& o) {
  if (o.format != "json") {
    std::cout << text;
    return;
  }
  json out = json::object();
  for (const auto& e : io::parse_document(text).entries) out[e.key] = json::parse(e.value);
  std::cout << out.dump(2) << "\n";
}

json labels(const FiniteAlgebra& l, const std::vector<Elem>& v) {
  json a = json::array();
  for (Elem e : v) a.push_back(l.label(e));
  return a;
}

json tuples(const FiniteAlgebra& l, const std::vector<FunctionVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(labels(l, v));
  return a;
}

json point_names(const std::vector<std::string>& points, PointSet s) {
  json a = json::array();
  for (std::size_t x : members(s)) a.push_back(points[x]);
  return a;
}

json local(const FiniteAlgebra& l, const std::vector<std::string>& points, const LocalFunction& f) {
  return {{"domain", point_names(points, f.domain)}, {"values", labels(l, f.values)}};
}

json check(const Check& c) { return {{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}}; }

json blocks(const Congruence& t) {
  std::map<std::size_t, json> by_block;
  for (Elem a = 0; a < t.size(); ++a) {
    auto& b = by_block[t.block(a)];
    if (b.is_null()) b = json::array();
    b.push_back(a);
  }
  json out = json::array();
  for (auto& [b, members] : by_block) out.push_back(members);
  return out;
}

// ---- input ----

FiniteAlgebra dualizer(const Options& o) {
  if (o.dualizer.empty()) throw InputError("--dualizer is required");
  return io::resolve_dualizer(o.dualizer, std::filesystem::current_path());
}

const std::string& input(const Options& o, std::size_t i = 0) {
  if (o.inputs.size() <= i) throw InputError("missing input document");
  return o.inputs[i];
}

// Algebra documents or builtin names.
FiniteAlgebra algebra(const std::string& ref) { return io::resolve_dualizer(ref); }

io::SpaceDocument space(const Options& o, std::size_t i = 0) {
  std::filesystem::path p = input(o, i);
  std::optional<FiniteAlgebra> l;
  if (!o.dualizer.empty()) l = dualizer(o);
  return io::parse_space(io::parse_document(io::read_file(p)), p.parent_path(), l);
}

const LSpace& lspace(const io::SpaceDocument& d) {
  if (!d.lspace) throw InputError("expected an lspace document");
  return *d.lspace;
}

// Relation documents stand for their Priestley space.
ConstrainedSpace constrained(const io::SpaceDocument& d) {
  if (d.relation) return priestley_space(d.topology, *d.relation);
  if (!d.constrained) throw InputError("expected a constrained document");
  return *d.constrained;
}

bool is_algebra_document(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return true;
  const auto doc = io::parse_document(io::read_file(ref));
  const io::Entry* kind = doc.find("kind");
  return kind && kind->value == "\"algebra\"";
}

std::string ref_of(const io::SpaceDocument& d, const Options& o) {
  return o.dualizer.empty() ? d.dualizer_ref : o.dualizer;
}

// ---- commands ----

int cmd_spectrum(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  Spectrum spec = spectrum(algebra(input(o)), l);
  std::vector<std::string> points;
  for (std::size_t i = 0; i < spec.points.size(); ++i) points.push_back("h" + std::to_string(i));
  emit_document(io::serialize_space(io::make_document(spec.space, o.dualizer, points)), o);
  return kPass;
}

int cmd_comp(const Options& o) {
  auto d = space(o);
  emit_document(io::serialize_algebra(comp_algebra(lspace(d), o.limits()), "comp"), o);
  return kPass;
}

int cmd_roundtrip(const Options& o) {
  RoundtripReport r = is_algebra_document(input(o))
                          ? check_duality_roundtrip(algebra(input(o)), dualizer(o))
                          : check_duality_roundtrip(lspace(space(o)));
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check(c));
  emit({{"holds", r.ok()}, {"checks", checks}}, o);
  return r.ok() ? kPass : kFalsified;
}

int cmd_props(const Options& o) {
  auto d = space(o);
  SpaceProperties p = space_properties(lspace(d));
  emit({{"separated", p.separated},
        {"full", p.full},
        {"completely_regular", p.completely_regular},
        {"compact", p.compact},
        {"discrete", p.discrete}},
       o);
  return kPass;
}

int cmd_endos(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  PartialEndoReport r = partial_endomorphisms(l);
  json out{{"all_trivial", r.all_trivial}, {"count", r.endos.size()}};
  if (r.witness) out["witness"] = {{"domain", labels(l, r.witness->domain)}, {"images", labels(l, r.witness->images)}};
  emit(out, o);
  return r.all_trivial ? kPass : kFalsified;
}

int cmd_classify_sq(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  SquareClassification c = classify_square_subalgebras(l);
  json subs = json::array();
  for (const auto& s : c.subalgebras) {
    subs.push_back({{"pairs", tuples(l, s.pairs)}, {"kind", std::string(to_string(s.kind))}});
  }
  emit({{"only_subdiagonal_or_product", c.only_subdiagonal_or_product},
        {"count", c.subalgebras.size()},
        {"subalgebras", subs}},
       o);
  return c.only_subdiagonal_or_product ? kPass : kFalsified;
}

int cmd_nu_search(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  const std::size_t arity = o.k.value_or(2) + 1;
  auto f = search_nu_function(l, arity, o.limits());
  json out{{"arity", arity}, {"found", f.has_value()}};
  if (f && f->witness) out["term"] = f->witness->to_string();
  emit(out, o);
  return f ? kPass : kFalsified;
}

int cmd_bp_check(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  const std::size_t k = o.k.value_or(2);
  const std::size_t bound = o.bound.value_or(3);
  bool sampled = o.strategy == "sampled" || (o.strategy == "auto" && l.size() > 2);
  if (sampled && !o.seed) throw InputError("sampled bp-check needs --seed");
  BpReport r = check_finite_bp(l, k, bound, sampled ? BpStrategy::sampled : BpStrategy::exhaustive,
                               o.seed.value_or(1), o.samples, o.limits());
  json out{{"k", k}, {"bound", bound}, {"strategy", sampled ? "sampled" : "exhaustive"}};
  if (sampled) out["seed"] = *o.seed;
  out["holds"] = r.holds;
  out["instances"] = r.instances;
  if (r.counterexample) {
    out["counterexample"] = {{"points", r.counterexample->points},
                             {"a", tuples(l, r.counterexample->a)},
                             {"f", labels(l, r.counterexample->f)}};
  }
  emit(out, o);
  return r.holds ? kPass : kFalsified;
}

int cmd_crp_check(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  FiniteAlgebra a = algebra(input(o));
  const std::size_t k = o.k.value_or(2);
  CrtSweep s = chinese_remainder_sweep(a, l, k, o.bound.value_or(3));
  json out{{"k", k}, {"systems", s.systems}, {"holds", !s.counterexample}};
  if (s.counterexample) {
    json eqs = json::array();
    for (const auto& e : *s.counterexample) eqs.push_back({{"a", a.label(e.a)}, {"theta", blocks(e.theta)}});
    out["counterexample"] = eqs;
  }
  emit(out, o);
  return s.counterexample ? kFalsified : kPass;
}

int cmd_jonsson_check(const Options& o) {
  auto d = space(o);
  const LSpace& x = lspace(d);
  auto members = x.comp();
  std::sort(members.begin(), members.end());
  auto covers = all_covers(x.size(), o.bound.value_or(3));
  JonssonReport r = jonsson_finite_cover_check(x.dualizer(), x.size(), members, covers);
  json out{{"holds", r.holds}, {"checked", r.checked}};
  if (r.failing_hom) out["failing_hom"] = *r.failing_hom;
  if (r.failing_cover) {
    json parts = json::array();
    for (PointSet p : covers[*r.failing_cover]) parts.push_back(point_names(d.points, p));
    out["failing_cover"] = parts;
  }
  emit(out, o);
  return r.holds ? kPass : kFalsified;
}

int cmd_congruences(const Options& o) {
  FiniteAlgebra l = dualizer(o);
  AntiIsoReport r = congruence_spectrum_antiisomorphism(algebra(input(o)), l);
  json pre = json::array();
  for (const auto& c : r.preconditions) pre.push_back(check(c));
  emit({{"holds", r.holds()},
        {"preconditions", pre},
        {"spectrum_size", r.spectrum_size},
        {"relative_congruences", r.relative_congruences},
        {"bijective", r.bijective},
        {"order_reversing", r.order_reversing}},
       o);
  return r.holds() ? kPass : kFalsified;
}

int cmd_cons(const Options& o) {
  auto d = space(o);
  const LSpace& x = lspace(d);
  const std::size_t k = o.k.value_or(2);
  std::string ref = ref_of(d, o);
  if (k == 1) {
    emit_document(io::serialize_space(io::make_document(cons_unary(x), ref, d.points)), o);
  } else {
    emit_document(io::serialize_space(io::make_document(cons(x, k), ref, d.points)), o);
  }
  return kPass;
}

int cmd_func(const Options& o) {
  auto d = space(o);
  LSpace x = d.unary ? func(*d.unary, o.limits()) : func(constrained(d), o.limits());
  emit_document(io::serialize_space(io::make_document(x, ref_of(d, o), d.points)), o);
  return kPass;
}

json validation(const ConstrainedValidation& v) {
  return {{"subdirect", v.subdirect},
          {"continuous", v.continuous},
          {"separated", v.separated},
          {"scott_continuous", v.scott_continuous},
          {"failure", v.failure}};
}

int cmd_gep(const Options& o) {
  auto d = space(o);
  GlobalExtension g;
  ConstrainedValidation v;
  FiniteAlgebra l;
  if (d.unary) {
    g = has_global_extension(*d.unary, o.limits());
    v = validate_constrained(*d.unary);
    l = d.unary->dualizer();
  } else {
    ConstrainedSpace s = constrained(d);
    g = has_global_extension(s, o.limits());
    v = validate_constrained(s, o.limits());
    l = s.dualizer();
  }
  json out{{"holds", g.holds}, {"ccomp_size", g.ccomp_size}, {"validation", validation(v)}};
  if (g.witness) out["witness"] = local(l, d.points, *g.witness);
  if (g.unseparated) out["unseparated"] = {d.points[g.unseparated->first], d.points[g.unseparated->second]};
  emit(out, o);
  return g.holds ? kPass : kFalsified;
}

int cmd_lep(const Options& o) {
  auto d = space(o);
  ConstrainedSpace s = d.unary ? unary_to_binary(*d.unary) : constrained(d);
  const std::size_t n = o.bound.value_or(s.arity() * (s.arity() - 1));
  LocalExtension r = has_local_extension(s, n, o.limits());
  json out{{"n", n}, {"holds", r.holds}};
  if (r.witness) out["witness"] = local(s.dualizer(), d.points, *r.witness);
  if (r.point) out["point"] = d.points[*r.point];
  emit(out, o);
  return r.holds ? kPass : kFalsified;
}

int cmd_local2global(const Options& o) {
  auto d = space(o);
  const ConstrainedSpace& s = constrained(d);
  auto m = search_nu_function(s.dualizer(), s.arity() + 1, o.limits());
  if (!m) {
    emit({{"holds", false}, {"reason", "no near-unanimity operation of arity k+1"}}, o);
    return kFalsified;
  }
  LocalToGlobalReport r = local_to_global_verify(s, *m, o.limits());
  json out{{"holds", r.holds()},
           {"lep_arity", r.lep_arity},
           {"lep", r.lep},
           {"gep", r.gep},
           {"convexity_checked", r.convexity_checked}};
  if (r.nonconvex) {
    out["nonconvex"] = {{"f", local(s.dualizer(), d.points, r.nonconvex->first)},
                        {"point", d.points[r.nonconvex->second]}};
  }
  emit(out, o);
  return r.holds() ? kPass : kFalsified;
}

json relation_pairs(const Relation& r, const std::vector<std::string>& points) {
  json pairs = json::array();
  for (std::size_t x = 0; x < r.size(); ++x) {
    for (std::size_t y : members(r[x])) pairs.push_back({points[x], points[y]});
  }
  return pairs;
}

int cmd_priestley(const Options& o) {
  auto d = space(o);
  Relation r;
  if (d.relation) {
    r = *d.relation;
  } else {
    if (!d.constrained) throw InputError("expected a relation or constrained document");
    const ConstrainedSpace& s = *d.constrained;
    if (!(s.dualizer() == catalog::dl2()) || s.arity() != 2) {
      throw InputError("priestley needs a relation or a binary constrained space over dl2");
    }
    r = priestley_order(s);
  }
  ConstrainedSpace s = priestley_space(d.topology, r);
  const bool transitive = is_transitive(r);
  LocalExtension lep = has_local_extension(s, 2, o.limits());
  GlobalExtension gep = has_global_extension(s, o.limits());
  const bool agree = lep.holds == transitive && transitive == gep.holds;
  json out{{"order", relation_pairs(r, d.points)},
           {"reflexive", is_reflexive(r)},
           {"transitive", transitive},
           {"antisymmetric", is_antisymmetric(r)},
           {"separated", priestley_separated(d.topology, r)},
           {"lep2", lep.holds},
           {"gep", gep.holds},
           {"ccomp_size", gep.ccomp_size},
           {"holds", agree}};
  if (lep.witness) out["lep_witness"] = {{"f", local(s.dualizer(), d.points, *lep.witness)}, {"point", d.points[*lep.point]}};
  if (gep.witness) out["gep_witness"] = local(s.dualizer(), d.points, *gep.witness);
  emit(out, o);
  return agree ? kPass : kFalsified;
}

int cmd_mv_priestley(const Options& o) {
  auto d = space(o);
  MvPriestleyReport r = mv_priestley_validate(constrained(d), o.limits());
  emit({{"holds", r.agrees()},
        {"order", relation_pairs(r.order, d.points)},
        {"partial_order", r.partial_order},
        {"incomparable_are_products", r.incomparable_are_products},
        {"continuous", r.continuous},
        {"subdirect", check(r.subdirect)},
        {"diagonal", check(r.diagonal)},
        {"extension", check(r.extension)},
        {"mv_priestley", r.mv_priestley},
        {"generic", r.generic},
        {"five_case", check(r.five_case)},
        {"lep2", r.lep2}},
       o);
  return r.agrees() ? kPass : kFalsified;
}

int cmd_export_dot(const Options& o) {
  std::cout << io::export_dot(space(o));
  return kPass;
}

int cmd_corpus(const Options& o) {
  if (!o.seed) throw InputError("corpus needs --seed");
  json results = json::array();
  bool all = true;
  corpus::run_acceptance(*o.seed, o.only, [&](const corpus::CriterionResult& r) {
    all = all && r.passed;
    if (o.format == "json") {
      results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n"
                << std::flush;
    }
  });
  if (o.format == "json") std::cout << json{{"seed", *o.seed}, {"passed", all}, {"criteria", results}}.dump(2) << "\n";
  else std::cout << "seed: " << *o.seed << "\n";
  return all ? kPass : kFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite natural-duality workbench"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"spectrum", "Spec A as an L-space document (input: algebra)", cmd_spectrum},
      {"comp", "Comp X as an algebra document (input: lspace)", cmd_comp},
      {"roundtrip", "check eta and ev are isomorphisms (input: algebra or lspace)", cmd_roundtrip},
      {"props", "separated, full and completely regular (input: lspace)", cmd_props},
      {"endos", "partial endomorphisms of the dualizer", cmd_endos},
      {"classify-sq", "subalgebras of L^2 by kind", cmd_classify_sq},
      {"nu-search", "near-unanimity term of arity k+1", cmd_nu_search},
      {"bp-check", "finite k-ary bounded-arity property up to --bound points", cmd_bp_check},
      {"crp-check", "Chinese remainder systems with up to --bound equations (input: algebra)", cmd_crp_check},
      {"jonsson-check", "finite covers with up to --bound parts (input: lspace)", cmd_jonsson_check},
      {"congruences", "relative congruences against subsets of the spectrum (input: algebra)", cmd_congruences},
      {"cons", "Cons_k X; --k 1 gives the unary form (input: lspace)", cmd_cons},
      {"func", "Func of a constrained space (input: constrained)", cmd_func},
      {"gep", "global extension property (input: constrained)", cmd_gep},
      {"lep", "local extension property for --bound points (input: constrained)", cmd_lep},
      {"local2global", "LEP(k(k-1)) implies GEP, with convexity (input: constrained)", cmd_local2global},
      {"priestley", "order relations against LEP(2) and GEP (input: relation or constrained over dl2)", cmd_priestley},
      {"mv-priestley", "positive MV-chain conditions against GEP (input: constrained)", cmd_mv_priestley},
      {"export-dot", "DOT rendering of a space document", cmd_export_dot},
      {"corpus", "run the acceptance suite", cmd_corpus},
  };

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", o.inputs, "input documents or builtin:NAME");
    sub->add_option("--dualizer", o.dualizer, "builtin:NAME or algebra document");
    sub->add_option("--k", o.k, "arity");
    sub->add_option("--bound", o.bound, "size bound");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--budget", o.budget, "closure budget");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    if (std::string_view(c.name) == "bp-check") {
      sub->add_option("--strategy", o.strategy, "exhaustive, sampled or auto")
          ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
      sub->add_option("--samples", o.samples, "sampled instances");
    }
    if (std::string_view(c.name) == "corpus") sub->add_option("--only", o.only, "single criterion");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    return chosen->run(o);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
  }
  return kInputError;
}
