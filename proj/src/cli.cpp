#include "fsl/cli.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "fsl/scenarios.hpp"

namespace fsl::cli {

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;
  std::optional<unsigned> degree;
  std::string format;
  std::vector<std::string> inputs;
  std::string name;
};

bool want_json(const Options& o, bool default_json = false) {
  return o.format.empty() ? default_json : o.format == "json";
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int cmd_signature(const Options& o, std::ostream& out) {
  const EpsSymmetricForm f = io::form_from_json(io::read_json_file(o.inputs.at(0)));
  const long s = signature(f);
  if (want_json(o))
    out << io::Json{{"signature", s}}.dump() << "\n";
  else
    out << s << "\n";
  return ok;
}

io::Json linking_trace(const LinkingForm& t) {
  if (!t.is_nondegenerate()) throw PreconditionError("linking form is degenerate");
  io::Json j;
  j["input"] = io::linking_to_json(t);
  j["order"] = t.order().get_str();
  j["group"] = t.group().to_string();
  j["derham"] = derham_of_linking(t);
  io::Json parts = io::Json::array();
  for (const auto& [p, part] : p_primary_parts(t)) {
    io::Json pj;
    pj["prime"] = p.get_si();
    pj["part"] = io::linking_to_json(part);
    const ElementaryReduction red = reduce_to_elementary(part);
    io::Json steps = io::Json::array();
    for (const auto& s : red.steps)
      steps.push_back(io::Json{{"sublagrangian_order", s.sublagrangian_order.get_str()},
                               {"result", io::linking_to_json(s.result)},
                               {"group", s.result.group().to_string()}});
    pj["steps"] = steps;
    pj["elementary"] = io::linking_to_json(red.result);
    pj["elementary_group"] = red.result.group().to_string();
    const WittDatum w = witt_class_fp(as_fp_form(red.result, p));
    io::Json wj{{"group", w.group()}, {"rank_mod2", w.rank_mod2}, {"trivial", w.is_trivial()}};
    if (w.kind != WittDatum::Kind::two) wj["disc_square"] = w.disc_square;
    if (w.kind == WittDatum::Kind::odd_symmetric && w.group() == "Z/4") wj["z4_element"] = w.z4_element();
    wj["text"] = w.to_string();
    pj["witt"] = wj;
    pj["derham"] = derham_of_linking(part);
    parts.push_back(std::move(pj));
  }
  j["parts"] = parts;
  return j;
}

int cmd_linking_reduce(const Options& o, std::ostream& out) {
  const LinkingForm t = io::linking_from_json(io::read_json_file(o.inputs.at(0)));
  const io::Json j = linking_trace(t);
  if (want_json(o, true)) {
    out << j.dump(2) << "\n";
    return ok;
  }
  out << "input: " << t.to_string() << "  (" << t.group().to_string() << ")\n";
  for (const auto& pj : j["parts"]) {
    out << "p = " << pj["prime"].get<long>() << ":\n";
    for (const auto& s : pj["steps"])
      out << "  step |L| = " << s["sublagrangian_order"].get<std::string>() << " -> " << s["group"].get<std::string>()
          << "\n";
    out << "  elementary: " << pj["elementary_group"].get<std::string>() << "\n";
    out << "  witt: " << pj["witt"]["text"].get<std::string>() << "\n";
  }
  out << "derham: " << j["derham"].get<int>() << "\n";
  return ok;
}

int cmd_derham(const Options& o, std::ostream& out) {
  const io::Json j = io::read_json_file(o.inputs.at(0));
  int bit = 0;
  std::string kind;
  if (j.is_object() && j.contains("matrix")) {
    bit = mapping_torus_derham(io::isometry_from_json(j));
    kind = "isometry";
  } else {
    bit = derham_of_linking(io::linking_from_json(j));
    kind = "linking";
  }
  if (want_json(o))
    out << io::Json{{"kind", kind}, {"derham", bit}}.dump() << "\n";
  else
    out << bit << "\n";
  return ok;
}

int cmd_twisted_sig(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) throw InputError("twisted-sig needs a manifold file and a system file");
  const SimplicialManifold m = io::manifold_from_json(io::read_json_file(o.inputs[0]));
  const io::SystemSpec spec = io::system_from_json(io::read_json_file(o.inputs[1]));
  if (!spec.pairing) throw InputError("system file needs a \"pairing\" form");
  const long s = twisted_signature(m, PairedLocalSystem(spec.system, *spec.pairing));
  if (want_json(o))
    out << io::Json{{"signature", s}}.dump() << "\n";
  else
    out << s << "\n";
  return ok;
}

int cmd_charclass(const Options& o, std::ostream& out) {
  const unsigned n = o.degree.value_or(1);
  const std::string& name = o.name;
  GradedPoly p;
  if (name == "L") {
    p = l_polynomial(n);
  } else if (name == "ch") {
    p = chern_character(n);
  } else if (name == "tilde_ph") {
    p = tilde_ph(n);
  } else if (name == "newton") {
    p = newton_polynomial(n);
  } else if (name == "wu") {
    p = wu_class(universal_total(Family::w, Domain::f2, n), n);
  } else if (name == "derham_class") {
    p = derham_class(wu_class(universal_total(Family::w, Domain::f2, n), n), n);
  } else {
    throw InputError("unknown class \"" + name + "\" (L, ch, tilde_ph, wu, derham_class, newton)");
  }
  if (want_json(o))
    out << io::Json{{"name", name}, {"degree", n}, {"text", p.to_string()}, {"terms", io::poly_to_json(p)}}.dump()
        << "\n";
  else
    out << p.to_string() << "\n";
  return ok;
}

int cmd_verify_all(const Options& o, std::ostream& out) {
  VerifyConfig config;
  if (o.trials) config.set_trials(*o.trials);
  const CampaignReport r = run_verify_all(o.seed, config);
  if (want_json(o))
    out << report_to_json(r).dump(2) << "\n";
  else
    out << report_to_text(r);
  return r.passed() ? ok : verification_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact twisted signatures, linking forms and characteristic-class identities", "fsl"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto* sig = app.add_subcommand("signature", "Signature of a symmetric form");
  sig->add_option("form", o.inputs, "form.json")->required()->expected(1);
  add_common(sig);
  auto* lr = app.add_subcommand("linking-reduce", "Primary decomposition, reduction trace and Witt data");
  lr->add_option("linking", o.inputs, "linking.json")->required()->expected(1);
  add_common(lr);
  auto* dr = app.add_subcommand("derham", "De Rham bit of a linking form or of an isometry (r1)");
  dr->add_option("file", o.inputs, "linking.json or isometry.json")->required()->expected(1);
  add_common(dr);
  auto* ts = app.add_subcommand("twisted-sig", "Twisted signature of a paired local system");
  ts->add_option("files", o.inputs, "manifold.json system.json")->required()->expected(2);
  add_common(ts);
  auto* cc = app.add_subcommand("charclass", "Print a characteristic class polynomial");
  cc->add_option("name", o.name, "L, ch, tilde_ph, wu, derham_class or newton")->required();
  std::optional<unsigned> positional_degree;
  cc->add_option("degree_pos", positional_degree, "degree (same as --degree)");
  cc->add_option("--degree", o.degree, "Degree or truncation");
  add_common(cc);
  auto* va = app.add_subcommand("verify-all", "Run every campaign and identity check");
  va->add_option("--seed", o.seed, "Campaign seed");
  va->add_option("--trials", o.trials, "Random trials per campaign")->check(CLI::PositiveNumber);
  add_common(va);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "fsl: error: " << one_line(e.what()) << "\n";
    return input_error;
  }
  if (!o.degree) o.degree = positional_degree;

  try {
    if (*sig) return cmd_signature(o, out);
    if (*lr) return cmd_linking_reduce(o, out);
    if (*dr) return cmd_derham(o, out);
    if (*ts) return cmd_twisted_sig(o, out);
    if (*cc) return cmd_charclass(o, out);
    if (*va) return cmd_verify_all(o, out);
  } catch (const InputError& e) {
    err << "fsl: input error: " << one_line(e.what()) << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "fsl: precondition violated: " << one_line(e.what()) << "\n";
    return precondition;
  } catch (const StructuralError& e) {
    err << "fsl: structural violation: " << one_line(e.what()) << "\n";
    return structural;
  } catch (const InternalError& e) {
    err << "fsl: internal check failed: " << one_line(e.what()) << "\n";
    return verification_failed;
  }
  return input_error;
}

}  // namespace fsl::cli
