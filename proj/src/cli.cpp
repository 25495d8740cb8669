#include "knotgeo/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "knotgeo/geography.hpp"
#include "knotgeo/report.hpp"

namespace knotgeo {

namespace {

struct CliState {
  std::string registry_path;
  bool no_mirror_delta = false;
  bool allow_extrapolated = false;

  std::string expr_text;
  std::vector<std::int64_t> box_values;  // e_min, e_max, h_max
  std::string format = "json";

  std::string verify_family;
  std::int64_t verify_n = 3;
};

Registry load_registry(const CliState& st, std::ostream& err) {
  Registry reg = Registry::builtin();
  std::string path = st.registry_path;
  if (path.empty()) {
    if (const char* env = std::getenv("KNOTGEO_REGISTRY")) path = env;
  }
  if (!path.empty()) reg.merge_from(Registry::from_file(path), &err);
  return reg;
}

BundleOptions options_of(const CliState& st) {
  BundleOptions opt;
  opt.mirror_delta = !st.no_mirror_delta;
  opt.allow_extrapolated_upsilon_base = st.allow_extrapolated;
  return opt;
}

InvariantBundle bundle_of(const CliState& st, const Registry& reg) {
  const auto names = reg.known_names();
  const KnotExpr k = parse(st.expr_text, &names);
  return bundle(k, reg, options_of(st));
}

Box box_of(const CliState& st, const InvariantBundle& b) {
  if (st.box_values.empty()) return default_box(b);
  if (st.box_values.size() != 3)
    throw CLI::ValidationError("--box", "expected e_min,e_max,h_max");
  Box box{st.box_values[0], st.box_values[1], st.box_values[2]};
  if (box.e_min > box.e_max || box.h_max < 1)
    throw CLI::ValidationError("--box", "requires e_min <= e_max and h_max >= 1");
  return box;
}

void print_invariants(const InvariantBundle& b, std::ostream& out) {
  out << "knot: " << to_text(b.knot) << "\n";
  out << "sigma: " << b.sigma.str() << ", upsilon1: " << rational_to_string(b.upsilon1)
      << ", arf: " << b.arf << ", det: " << b.det.str() << "\n";
  out << "delta: " << (b.delta ? rational_to_string(*b.delta) : "unavailable") << "\n";
  out << "g4_upper: " << b.g4_upper.str() << "\n";
  out << "gamma4_upper: " << b.gamma4_upper.str() << "\n";
  out << "apexes:";
  for (const Apex& a : b.apexes) out << " " << a.point.str();
  out << "\n";
  if (b.upsilon1_extrapolated)
    out << "note: upsilon1 uses the extrapolated recursion base (a >= 6)\n";
}

int emit_classification(const CliState& st, const InvariantBundle& b, const Box& box,
                        const Registry& reg, std::ostream& out) {
  const ReportDocument doc = build_report(b, box, reg);
  if (st.format == "json") out << emit_json(doc);
  else if (st.format == "ascii") out << emit_ascii(doc);
  else if (st.format == "svg") out << emit_svg(doc);
  else throw CLI::ValidationError("--format", "must be json, ascii or svg");
  return 0;
}

int cmd_gamma4(const CliState& st, std::ostream& out, std::ostream& err) {
  const Registry reg = load_registry(st, err);
  const InvariantBundle b = bundle_of(st, reg);
  const GeographyReport rep = symbolic_summary(b);
  out << "gamma4: " << rep.gamma4_lower.str() << " ≤ γ₄ ≤ "
      << rep.gamma4_upper.str() << "\n";
  out << "lower: " << rep.gamma4_lower_certificate << "\n";
  out << "upper: " << rep.gamma4_upper_certificate << "\n";
  return 0;
}

int cmd_verify(const CliState& st, std::ostream& out, std::ostream& err) {
  const Registry reg = load_registry(st, err);
  const int family = st.verify_family == "t2" ? 2 : 3;
  KnotExpr k;
  k.terms.push_back(Term{1, TorusKnot{family, st.verify_n}});
  const InvariantBundle b = bundle(k, reg, options_of(st));
  CliState boxed = st;
  const Box box = box_of(boxed, b);
  const TheoremComparison cmp = verify_torus_theorem(family, st.verify_n, box, reg);

  out << "unknown points: " << cmp.engine_unknown_count << "\n";
  if (cmp.expected_unknown_count)
    out << "expected unknown points: " << *cmp.expected_unknown_count << "\n";
  if (cmp.theorem_ray)
    out << "theorem ray: start " << cmp.theorem_ray->start.str() << " direction ("
        << (cmp.theorem_ray->direction_e > 0 ? "+2" : "-2") << ",+1)\n";
  if (cmp.engine_ray)
    out << "engine ray: start " << cmp.engine_ray->start.str() << " direction ("
        << (cmp.engine_ray->direction_e > 0 ? "+2" : "-2") << ",+1)\n";
  out << "diff (resolved ranges): " << cmp.diff_resolved.size() << " points\n";
  out << "diff (literal ranges): " << cmp.diff_literal.size()
      << " points (range endpoints overlap the realizable set)\n";
  for (const TheoremDiffEntry& d : cmp.diff_resolved)
    out << "  " << d.point.str() << " engine=" << status_name(d.engine)
        << " theorem=" << status_name(d.theorem) << "\n";
  if (!cmp.verified()) {
    err << "error: engine disagrees with the classification theorem\n";
    return 3;
  }
  out << "verified\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliState st;
  CLI::App app{"Exact (e,h)-geography of nonorientable surfaces bounded by torus knots "
               "and their connected sums"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  app.add_option("--registry", st.registry_path,
                 "JSON registry merged over the builtin one (or KNOTGEO_REGISTRY)");
  app.add_flag("--no-mirror-delta", st.no_mirror_delta,
               "disable the mirrored variant of the delta-line obstruction");
  app.add_flag("--allow-extrapolated-upsilon-base", st.allow_extrapolated,
               "allow the Upsilon recursion base -floor(a^2/4) for a >= 6");

  CLI::App* inv = app.add_subcommand("invariants", "print the invariant bundle");
  inv->add_option("expr", st.expr_text, "knot expression, e.g. \"2*T(5,9) # -3*T(5,13)\"")
      ->required();

  CLI::App* classify = app.add_subcommand("classify", "classify (e,h) pairs over a box");
  classify->add_option("expr", st.expr_text)->required();
  classify->add_option("--box", st.box_values, "e_min,e_max,h_max")->delimiter(',');
  classify->add_option("--format", st.format, "json|ascii|svg");

  CLI::App* gamma = app.add_subcommand("gamma4", "bounds on the nonorientable 4-genus");
  gamma->add_option("expr", st.expr_text)->required();

  CLI::App* verify =
      app.add_subcommand("verify", "diff the engine against the torus-knot theorems");
  verify->add_option("family", st.verify_family, "t2 or t3")
      ->required()
      ->check(CLI::IsMember({"t2", "t3"}));
  verify->add_option("n", st.verify_n, "second torus index")->required();
  verify->add_option("--box", st.box_values, "e_min,e_max,h_max")->delimiter(',');

  CLI::App* plot = app.add_subcommand("plot", "render the classification");
  plot->add_option("expr", st.expr_text)->required();
  plot->add_option("--box", st.box_values, "e_min,e_max,h_max")->delimiter(',');
  st.format = "json";
  plot->add_option("--format", st.format, "svg|ascii")->default_val("svg");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(inv)) {
      const Registry reg = load_registry(st, err);
      print_invariants(bundle_of(st, reg), out);
      return 0;
    }
    if (app.got_subcommand(classify)) {
      const Registry reg = load_registry(st, err);
      const InvariantBundle b = bundle_of(st, reg);
      return emit_classification(st, b, box_of(st, b), reg, out);
    }
    if (app.got_subcommand(gamma)) return cmd_gamma4(st, out, err);
    if (app.got_subcommand(verify)) return cmd_verify(st, out, err);
    if (app.got_subcommand(plot)) {
      if (st.format == "json") st.format = "svg";
      const Registry reg = load_registry(st, err);
      const InvariantBundle b = bundle_of(st, reg);
      return emit_classification(st, b, box_of(st, b), reg, out);
    }
    err << "error: no subcommand\n";
    return 1;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const registry_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    err << "error: internal consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace knotgeo
