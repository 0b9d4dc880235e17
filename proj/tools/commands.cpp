#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "fplab/io.hpp"
#include "fplab/version.hpp"

namespace fplab::cli {

using io::json;

namespace {

json envelope(const std::string& command, json config, json tolerances, json result) {
  return {{"tool", "fplab"},
          {"version", kVersion},
          {"command", command},
          {"config", std::move(config)},
          {"tolerances", std::move(tolerances)},
          {"result", std::move(result)}};
}

void emit(const json& report, const std::string& csv, const Output& out, std::ostream& os) {
  const std::string body = out.format == Format::Csv ? csv : report.dump(2) + "\n";
  if (out.path.empty() || out.path == "-") {
    os << body;
    return;
  }
  std::ofstream file(out.path);
  if (!file) throw Error("cannot write " + out.path);
  file << body;
}

json read_input(const std::string& path, std::istream& is) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(is), {});
  } else {
    std::ifstream file(path);
    if (!file) throw Error("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

std::string report_csv(std::span<const VerificationReport> reports) {
  std::ostringstream csv;
  csv << "theorem,holds,pairs,active,vacuous,violations,min_feasible_beta\n";
  for (const auto& r : reports) {
    csv << to_string(r.theorem) << "," << (r.holds ? "true" : "false") << "," << r.total_pairs
        << "," << r.premise_active_pairs << "," << r.vacuous_pairs << "," << r.violations.size()
        << ",";
    if (r.min_feasible_beta) csv << *r.min_feasible_beta;
    csv << "\n";
  }
  return csv.str();
}

template <class Fn>
int guarded(std::ostream& os, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    os << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    os << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int cmd_check_cclass(const CClassArgs& args, const Output& out, std::ostream& os) {
  return guarded(std::cerr, [&] {
    std::vector<int> ids = args.ids;
    if (ids.empty()) {
      for (int id = 1; id <= kCatalogSize; ++id) ids.push_back(id);
    }
    CClassGrid grid;
    grid.s_max = grid.t_max = args.s_max;
    grid.s_points = grid.t_points = args.grid_points;
    CClassCheckOptions opts;
    if (args.tol) opts.tol = *args.tol;

    // Build every function first so an unknown id fails before any sweep runs.
    std::vector<CClassFn> fns;
    for (int id : ids) {
      if (args.inject_broken && id == 1) {
        fns.push_back(CClassFn::custom([](double s, double t) { return s + t; }, "s + t"));
      } else {
        fns.push_back(catalog_cclass(id));
      }
    }

    bool all = true;
    json items = json::array();
    std::ostringstream csv;
    csv << "id,formula,passed,violations\n";
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const PropertyVerdict v = verify_cclass(fns[i], grid, opts);
      all = all && v.passed();
      json item = io::to_json(v);
      item["id"] = ids[i];
      item["spec"] = io::to_json(fns[i]);
      items.push_back(std::move(item));
      csv << ids[i] << ",\"" << fns[i].formula() << "\"," << (v.passed() ? "true" : "false")
          << "," << v.violations.size() << "\n";
    }
    json config = {{"ids", ids},
                   {"grid_points", args.grid_points},
                   {"s_max", args.s_max},
                   {"inject_broken", args.inject_broken}};
    json tolerances = {{"tol_c", opts.tol}, {"equality_band", opts.equality_band}};
    emit(envelope("check-cclass", config, tolerances, {{"all_passed", all}, {"items", items}}),
         csv.str(), out, os);
    return all ? kOk : kFailed;
  });
}

int cmd_example_e1(const E1Args& args, const Output& out, std::ostream& os) {
  return guarded(std::cerr, [&] {
    if (args.n_max < 1) throw Error("--n-max must be >= 1");
    const double tol = args.tol.value_or(kPairTol);
    const ExampleE1 e1 = example_e1_space(args.n_max);
    const auto& space = e1.space;
    const auto& map = e1.map;

    const Alpha alpha = Alpha::rational(5, 12);
    const double beta = 0.5;
    const IntegralGauge gauge = IntegralGauge::power_self();
    std::vector<HypothesisSpec> specs(5);
    specs[0] = {Theorem::Banach, {}, beta, {}, {}, {}, tol};
    specs[1] = {Theorem::Branciari, {}, beta, gauge, {}, {}, tol};
    specs[2] = {Theorem::Suzuki, alpha, beta, {}, {}, {}, tol};
    specs[3] = {Theorem::IntegralSuzuki, alpha, beta, gauge, {}, {}, tol};
    specs[4] = {Theorem::CClassIntegralSuzuki, alpha, {}, gauge, CClassFn::scaled(0.5),
                GaugePair::linear(2.0, 1.0), tol};

    const PropertyVerdict metric = validate_metric(space);
    const ClassificationSummary summary = classify(space, map, specs);
    const AttractionSummary attraction = global_attraction(space, map, StopRule{0.0, 1000});
    const std::vector<std::size_t> fixed = verify_uniqueness(space, map);

    const auto origin = space.find(Coords{0, 0});
    const auto p56 = space.find(Coords{5, 6});
    const auto p54 = space.find(Coords{5, 4});
    const auto& banach = summary.reports[0];
    const auto& branciari = summary.reports[1];
    const auto& main_theorem = summary.reports[4];
    const bool fixed_ok = fixed.size() == 1 && origin && fixed[0] == *origin;
    const bool success = metric.passed() && main_theorem.holds && !banach.holds &&
                         !banach.violations.empty() && !branciari.holds &&
                         !branciari.violations.empty() && fixed_ok &&
                         attraction.all_converged();

    json reports = json::array();
    for (const auto& r : summary.reports) reports.push_back(io::to_json(r, space));
    json family = json::array();
    for (const auto& f : summary.family_ratios) {
      family.push_back({{"n", f.n}, {"d_TxTy", f.numerator}, {"d_xy", f.denominator},
                        {"ratio", f.ratio}});
    }
    json fixed_labels = json::array();
    for (auto i : fixed) fixed_labels.push_back(space.point(i).label);
    json non_convergent = json::array();
    for (auto i : attraction.non_convergent) non_convergent.push_back(space.point(i).label);

    std::vector<std::string> notes;
    if (p56 && p54) {
      std::ostringstream n;
      n << "premise for ((5,6),(5,4)) uses alpha*d((5,6),T(5,6)) = 5/12*"
        << space.distance(*p56, map(*p56)) << " vs d = " << space.distance(*p56, *p54)
        << "; the text's alpha*d((5,6),T(5,4)) does not match the premise alpha*d(x,Tx) <= d(x,y)";
      notes.push_back(n.str());
    }
    if (!main_theorem.holds) {
      std::ostringstream n;
      n << main_theorem.violations.size()
        << " premise-active pair(s) violate the C-class condition";
      notes.push_back(n.str());
    }

    json result = {
        {"points", space.size()},
        {"closure_points_added", e1.closure_points},
        {"metric", io::to_json(metric)},
        {"reports", reports},
        {"sup_ratio", summary.sup_ratio},
        {"family_ratios", family},
        {"fixed_points", fixed_labels},
        {"attraction",
         {{"all_converged", attraction.all_converged()},
          {"max_steps", attraction.max_steps},
          {"non_convergent", non_convergent}}},
        {"notes", notes},
        {"success", success}};
    if (summary.sup_ratio_pair) {
      result["sup_ratio_pair"] = {space.point(summary.sup_ratio_pair->first).label,
                                  space.point(summary.sup_ratio_pair->second).label};
    }
    json config = {{"n_max", args.n_max},
                   {"alpha", "5/12"},
                   {"beta", beta},
                   {"F", "s/2"},
                   {"psi", "2t"},
                   {"phi", "t"},
                   {"gauge", "x^x"}};
    json tolerances = {{"pair_tol", tol}, {"log_rel_tol", kLogRelTol}};
    emit(envelope("example-e1", config, tolerances, result), report_csv(summary.reports), out,
         os);
    return success ? kOk : kFailed;
  });
}

int cmd_verify_space(const InputArgs& args, const Output& out, std::istream& is,
                     std::ostream& os) {
  return guarded(std::cerr, [&] {
    const json input = read_input(args.input, is);
    const io::SpaceInput parsed = io::space_from_json(input);
    std::vector<HypothesisSpec> specs;
    if (input.contains("hypotheses")) {
      for (const auto& h : input.at("hypotheses")) {
        specs.push_back(io::hypothesis_from_json(h));
        if (args.tol) specs.back().tol = *args.tol;
      }
    }
    const PropertyVerdict metric = validate_metric(parsed.space);
    if (!metric.passed()) {
      emit(envelope("verify-space", {{"input", args.input}}, {},
                    {{"metric", io::to_json(metric)}}),
           "metric,invalid\n", out, os);
      return kFailed;
    }
    const ClassificationSummary summary = classify(parsed.space, parsed.map, specs);
    bool all = true;
    json reports = json::array();
    for (const auto& r : summary.reports) {
      all = all && r.holds;
      reports.push_back(io::to_json(r, parsed.space));
    }
    json result = {{"metric", io::to_json(metric)},
                   {"reports", reports},
                   {"sup_ratio", summary.sup_ratio},
                   {"all_hold", all}};
    emit(envelope("verify-space", {{"input", args.input}, {"points", parsed.space.size()}},
                  {{"pair_tol", args.tol.value_or(kPairTol)}}, result),
         report_csv(summary.reports), out, os);
    return all ? kOk : kFailed;
  });
}

int cmd_picard(const InputArgs& args, const Output& out, std::istream& is, std::ostream& os) {
  return guarded(std::cerr, [&] {
    const io::SpaceInput parsed = io::space_from_json(read_input(args.input, is));
    const StopRule rule{args.tol.value_or(0.0), 10000};
    std::vector<PicardTrace> traces;
    if (args.start) {
      const auto idx = parsed.space.find(*args.start);
      if (!idx) throw Error("no point labelled '" + *args.start + "'");
      traces.push_back(iterate(parsed.space, parsed.map, *idx, rule));
    } else {
      traces = global_attraction(parsed.space, parsed.map, rule).traces;
    }
    bool all = true;
    json jt = json::array();
    std::ostringstream csv;
    csv << "start,converged,steps,fixed_point\n";
    for (const auto& t : traces) {
      all = all && t.converged();
      jt.push_back(io::to_json(t, parsed.space));
      csv << parsed.space.point(t.start).label << "," << (t.converged() ? "true" : "false") << ","
          << t.steps << "," << parsed.space.point(t.fixed_point()).label << "\n";
    }
    json fixed = json::array();
    for (auto i : verify_uniqueness(parsed.space, parsed.map)) {
      fixed.push_back(parsed.space.point(i).label);
    }
    emit(envelope("picard", {{"input", args.input}, {"start", args.start.value_or("all")}},
                  {{"stop_tol", rule.stop_tol}, {"max_iter", rule.max_iter}},
                  {{"traces", jt}, {"fixed_points", fixed}, {"all_converged", all}}),
         csv.str(), out, os);
    return all ? kOk : kFailed;
  });
}

int cmd_solve_volterra(const InputArgs& args, const Output& out, std::istream& is,
                       std::ostream& os) {
  return guarded(std::cerr, [&] {
    io::VolterraInput in = io::volterra_from_json(read_input(args.input, is));
    if (args.tol) in.options.rule.stop_tol = *args.tol;
    const volterra::Solution sol = volterra::solve(in.problem, in.options);

    json result = io::to_json(sol, in.problem);
    if (args.samples > 0 && in.problem.hypothesis) {
      volterra::SamplingOptions sopts;
      sopts.seed = args.seed;
      result["condition_ii"] =
          io::to_json(volterra::check_condition_ii(in.problem, args.samples, sopts));
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,x\n";
    for (std::size_t j = 0; j < sol.values.nodes(); ++j) {
      csv << in.problem.node(j) << "," << sol.values[j] << "\n";
    }
    json config = {{"input", args.input},
                   {"M", in.problem.M},
                   {"max_iter", in.options.rule.max_iter},
                   {"samples", args.samples},
                   {"seed", args.seed}};
    emit(envelope("solve-volterra", config, {{"stop_tol", in.options.rule.stop_tol}}, result),
         csv.str(), out, os);
    return sol.converged ? kOk : kFailed;
  });
}

int run(int argc, char** argv, std::istream& is, std::ostream& os, std::ostream& err) {
  CLI::App app{"Fixed-point laboratory for integral-type Suzuki contractions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Output output;
  std::string format = "json";
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", output.path, "Output file ('-' for stdout)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  };

  CClassArgs cclass;
  auto* c = app.add_subcommand("check-cclass", "Sample the C-class conditions on catalog items");
  c->add_option("--ids", cclass.ids, "Catalog ids (default: all 17)");
  c->add_option("--grid-n", cclass.grid_points, "Grid points per axis")->check(CLI::Range(2, 100000));
  c->add_option("--s-max", cclass.s_max, "Grid extent on both axes")->check(CLI::PositiveNumber);
  c->add_option("--tol", cclass.tol, "Slack on F(s,t) <= s");
  c->add_flag("--inject-broken", cclass.inject_broken, "Replace item 1 by s + t")->group("");
  add_output(c);

  E1Args e1;
  auto* e = app.add_subcommand("example-e1", "Reproduce the truncated Example e1 analysis");
  e->add_option("--n-max", e1.n_max, "Truncation of the (n,0) and (n+12,n+13) families");
  e->add_option("--tol", e1.tol, "Comparison slack");
  add_output(e);

  InputArgs input;
  auto* v = app.add_subcommand("verify-space", "Check hypotheses on a JSON space file");
  v->add_option("input", input.input, "Space JSON ('-' for stdin)")->required();
  v->add_option("--tol", input.tol, "Comparison slack");
  add_output(v);

  auto* p = app.add_subcommand("picard", "Run Picard iteration on a JSON space file");
  p->add_option("input", input.input, "Space JSON ('-' for stdin)")->required();
  p->add_option("--start", input.start, "Start label (default: every point)");
  p->add_option("--tol", input.tol, "Stop tolerance");
  add_output(p);

  auto* s = app.add_subcommand("solve-volterra", "Solve a Volterra problem by successive approximation");
  s->add_option("input", input.input, "Problem JSON ('-' for stdin)")->required();
  s->add_option("--tol", input.tol, "Override stop_tol");
  s->add_option("--samples", input.samples, "Condition (ii) random pairs (needs a hypothesis)");
  s->add_option("--seed", input.seed, "Seed for condition (ii) sampling");
  add_output(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, os, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, os, err);
    return kUsage;
  }
  output.format = format == "csv" ? Format::Csv : Format::Json;

  if (c->parsed()) return cmd_check_cclass(cclass, output, os);
  if (e->parsed()) return cmd_example_e1(e1, output, os);
  if (v->parsed()) return cmd_verify_space(input, output, is, os);
  if (p->parsed()) return cmd_picard(input, output, is, os);
  return cmd_solve_volterra(input, output, is, os);
}

}  // namespace fplab::cli
