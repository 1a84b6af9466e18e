#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superweil/superweil.hpp"

namespace sw = superweil;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  unsigned samples = 50;
  unsigned order = 6;
  std::size_t max_dim = sw::default_max_dim;
};

/// Usage problems that are not grammar errors: missing files, bad flag values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string text;
  int code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class S>
const char* scalar_name() {
  return std::is_same_v<S, sw::Rational> ? "rational" : "double";
}

template <class S>
json element_json(const sw::Element<S>& e) {
  json terms = json::array();
  for (std::size_t k = 0; k < e.size(); ++k)
    if (!sw::ScalarTraits<S>::is_zero(e[k]))
      terms.push_back({{"basis", e.algebra()->label(k)}, {"coefficient", sw::ScalarTraits<S>::to_string(e[k])}});
  return {{"literal", sw::format_element(e)}, {"terms", terms}};
}

template <class S>
json point_json(const sw::APoint<S>& x) {
  json even = json::array(), odd = json::array();
  for (const auto& v : x.even_values()) even.push_back(sw::format_element(v));
  for (const auto& v : x.odd_values()) odd.push_back(sw::format_element(v));
  return {{"algebra", x.algebra()->descriptor().to_string()}, {"even", even}, {"odd", odd}};
}

std::vector<sw::Rational> rational_list(const std::string& text, const char* flag) {
  try {
    return sw::parse_rational_list(text);
  } catch (const sw::ParseError& e) {
    throw sw::ParseError(std::string("--") + flag + ": " + e.what());
  }
}

// ---------------------------------------------------------------- algebra

Output cmd_algebra(const Globals& g, const std::string& text) {
  sw::AlgebraPtr a = sw::make_algebra(sw::parse_descriptor(text), g.max_dim);
  std::vector<std::string> basis;
  for (std::size_t k = 0; k < a->dim(); ++k) basis.push_back(a->label(k));
  if (g.json) {
    json j;
    j["dim"] = a->dim();
    j["height"] = a->height();
    j["width"] = a->width();
    j["basis"] = basis;
    return {dump(j)};
  }
  std::string out = "algebra: " + a->descriptor().to_string() + "\n";
  out += "dim: " + std::to_string(a->dim()) + "\n";
  out += "height: " + std::to_string(a->height()) + "\n";
  out += "width: " + std::to_string(a->width()) + "\n";
  out += "basis: ";
  for (std::size_t k = 0; k < basis.size(); ++k) out += (k ? ", " : "") + basis[k];
  return {out + "\n"};
}

// ---------------------------------------------------------------- eval

template <class S>
Output eval_report(const Globals& g, const sw::Section& s, const sw::APoint<S>& x) {
  sw::Element<S> r = sw::eval(s, x);
  if (g.json) {
    json j = {{"algebra", x.algebra()->descriptor().to_string()}, {"scalar", scalar_name<S>()}, {"value", element_json(r)}};
    return {dump(j)};
  }
  return {sw::format_element(r) + "\n"};
}

Output cmd_eval(const Globals& g, const std::string& section_path, const std::string& point_path,
                const std::optional<std::string>& algebra) {
  auto section = sw::parse_section_text(read_file(section_path));
  const std::string point_text = read_file(point_path);
  auto pt = sw::parse_point_text(point_text);
  std::optional<sw::AlgebraDescriptor> flag;
  if (algebra) flag = sw::parse_descriptor(*algebra);
  sw::AlgebraPtr a = sw::make_algebra(sw::resolve_algebra(pt, flag), g.max_dim);
  auto v = sw::coordinate_values<sw::Rational>(pt, a);
  sw::APoint<sw::Rational> x(v.domain, a, std::move(v.even), std::move(v.odd));
  sw::Section s = section.on(x.domain());
  try {
    return eval_report(g, s, x);
  } catch (const sw::InexactEvaluation&) {
    return eval_report(g, s, sw::to_double(x));
  }
}

// ---------------------------------------------------------------- tangent

template <class S>
std::vector<S> convert(const std::vector<sw::Rational>& xs) {
  std::vector<S> out;
  for (const auto& x : xs) {
    if constexpr (std::is_same_v<S, double>)
      out.push_back(x.get_d());
    else
      out.push_back(x);
  }
  return out;
}

template <class S>
Output tangent_report(const Globals& g, const sw::Section& s, const sw::TangentVector<sw::Rational>& v0) {
  sw::TangentVector<S> v{convert<S>(v0.base), convert<S>(v0.even_part), convert<S>(v0.odd_part)};
  sw::APoint<S> x = sw::apoint_from_tangent(v, s.domain());
  S value = sw::tangent_apply(v, s);
  std::string lit = sw::ScalarTraits<S>::to_string(value);
  if (g.json) {
    json j = {{"point", point_json(x)}, {"scalar", scalar_name<S>()}, {"value", lit}};
    return {dump(j)};
  }
  return {sw::format_point(x) + "v(s) = " + lit + "\n"};
}

Output cmd_tangent(const Globals& g, const std::string& section_path, const std::string& base,
                   const std::string& even, const std::string& odd) {
  auto section = sw::parse_section_text(read_file(section_path));
  sw::TangentVector<sw::Rational> v{rational_list(base, "base"), rational_list(even, "even"),
                                    odd.empty() ? std::vector<sw::Rational>{} : rational_list(odd, "odd")};
  if (v.even_part.size() != v.base.size())
    throw sw::InvalidArgument("--even has " + std::to_string(v.even_part.size()) + " entries, --base has " +
                              std::to_string(v.base.size()));
  auto dom = sw::Superdomain::whole(static_cast<unsigned>(v.base.size()), static_cast<unsigned>(v.odd_part.size()));
  sw::Section s = section.on(dom);
  try {
    return tangent_report<sw::Rational>(g, s, v);
  } catch (const sw::InexactEvaluation&) {
    return tangent_report<double>(g, s, v);
  }
}

// ---------------------------------------------------------------- derive

template <class S>
Output derive_report(const Globals& g, const sw::Section& s, const sw::APoint<S>& x,
                     std::vector<sw::Element<S>> values) {
  sw::Derivation<S> X = sw::derivation_from_values(x, std::move(values));
  sw::Element<S> r = sw::derivation_apply(X, s);
  auto parity = X.parity();
  std::string par = parity ? sw::to_string(*parity) : "inhomogeneous";
  if (g.json) {
    json j = {{"algebra", x.algebra()->descriptor().to_string()},
              {"scalar", scalar_name<S>()},
              {"parity", par},
              {"value", element_json(r)}};
    return {dump(j)};
  }
  return {"parity: " + par + "\n" + "X(s) = " + sw::format_element(r) + "\n"};
}

Output cmd_derive(const Globals& g, const std::string& section_path, const std::string& point_path,
                  const std::string& values_path, const std::optional<std::string>& algebra) {
  auto section = sw::parse_section_text(read_file(section_path));
  const std::string point_text = read_file(point_path), values_text = read_file(values_path);
  auto pt = sw::parse_point_text(point_text);
  auto vt = sw::parse_point_text(values_text);
  std::optional<sw::AlgebraDescriptor> flag;
  if (algebra) flag = sw::parse_descriptor(*algebra);
  sw::AlgebraPtr a = sw::make_algebra(sw::resolve_algebra(pt, flag), g.max_dim);
  if (vt.algebra) sw::resolve_algebra(vt, a->descriptor());

  auto xv = sw::coordinate_values<sw::Rational>(pt, a);
  sw::APoint<sw::Rational> x(xv.domain, a, std::move(xv.even), std::move(xv.odd));
  // Value lines use the point grammar; x<i> gives f_i and t<j> gives F_j, absent entries are zero.
  std::vector<sw::Element<sw::Rational>> values(x.domain().even_dim + x.domain().odd_dim, sw::Element<sw::Rational>(a));
  std::vector<bool> seen(values.size(), false);
  for (const auto& l : vt.lines) {
    const unsigned limit = l.odd ? x.domain().odd_dim : x.domain().even_dim;
    if (l.index >= limit)
      throw sw::DomainMismatch("line " + std::to_string(l.number) + ": coordinate " + (l.odd ? "t" : "x") +
                               std::to_string(l.index + 1) + " is not a coordinate of the point");
    const std::size_t slot = l.odd ? x.domain().even_dim + l.index : l.index;
    if (seen[slot])
      throw sw::ParseError(std::string("duplicate value for ") + (l.odd ? "t" : "x") + std::to_string(l.index + 1),
                           l.number, l.column);
    seen[slot] = true;
    values[slot] = sw::parse_element<sw::Rational>(l.literal, a, l.number, l.literal_offset);
  }
  sw::Section s = section.on(x.domain());
  try {
    return derive_report(g, s, x, values);
  } catch (const sw::InexactEvaluation&) {
    std::vector<sw::Element<double>> dv;
    for (const auto& v : values) dv.push_back(sw::to_double(v));
    return derive_report(g, s, sw::to_double(x), std::move(dv));
  }
}

// ---------------------------------------------------------------- dist

Output cmd_dist(const Globals& g, const std::string& dist_path, const std::optional<std::string>& section_path) {
  sw::Distribution<sw::Rational> v = sw::parse_distribution(read_file(dist_path));
  std::optional<sw::SectionText> section;
  if (section_path) section = sw::parse_section_text(read_file(*section_path));

  auto real = sw::distribution_to_apoint(v, g.max_dim);
  auto back = sw::distribution_from<sw::Rational>(std::span<const sw::Rational>(real.omega), real.point);
  const bool roundtrip = back == v;

  std::optional<std::string> value;
  if (section) {
    sw::Section s = section->on(v.domain);
    try {
      value = sw::ScalarTraits<sw::Rational>::to_string(v.apply(s));
    } catch (const sw::InexactEvaluation&) {
      sw::Distribution<double> vd{v.domain, convert<double>(v.support), v.order, {}};
      for (const auto& [m, a] : v.coefficients) vd.coefficients.emplace(m, a.get_d());
      value = sw::ScalarTraits<double>::to_string(vd.apply(s));
    }
  }

  json omega = json::array();
  std::string omega_text;
  for (std::size_t k = 0; k < real.omega.size(); ++k) {
    if (sgn(real.omega[k]) == 0) continue;
    const std::string label = real.algebra->label(k), c = real.omega[k].get_str();
    omega.push_back({{"basis", label}, {"value", c}});
    omega_text += "  " + label + ": " + c + "\n";
  }
  if (g.json) {
    json j = {{"domain", v.domain.to_string()},
              {"order", v.order},
              {"point", point_json(real.point)},
              {"functional", omega},
              {"roundtrip", roundtrip}};
    if (value) j["value"] = *value;
    return {dump(j), roundtrip ? 0 : 1};
  }
  std::string out = "domain: " + v.domain.to_string() + "\norder: " + std::to_string(v.order) + "\n";
  out += sw::format_point(real.point);
  out += "functional:\n" + (omega_text.empty() ? std::string("  0\n") : omega_text);
  out += std::string("roundtrip: ") + (roundtrip ? "ok" : "FAILED") + "\n";
  if (value) out += "v(s) = " + *value + "\n";
  return {out, roundtrip ? 0 : 1};
}

// ---------------------------------------------------------------- natural

Output cmd_natural(const Globals& g, const std::string& series_path, const std::optional<std::string>& point_path) {
  sw::FormalSeriesFamily F = sw::parse_series(read_file(series_path), g.order);
  // PointText refers into the file contents.
  std::string point_text;
  std::optional<sw::PointText> pt;
  if (point_path) {
    point_text = read_file(*point_path);
    pt = sw::parse_point_text(point_text);
  }

  sw::SmoothnessResult r = sw::smoothness_check(F, g.samples, g.tol, g.seed);
  std::optional<sw::SuperdomainMorphism> phi;
  if (r.pass) phi = sw::morphism_from_series(F, g.samples, g.tol, g.seed);

  std::optional<json> image_json;
  std::string image_text;
  if (pt) {
    sw::AlgebraPtr a = sw::make_algebra(sw::resolve_algebra(*pt, std::nullopt), g.max_dim);
    auto xv = sw::coordinate_values<sw::Rational>(*pt, a);
    if (xv.domain.even_dim != F.source().even_dim || xv.domain.odd_dim != F.source().odd_dim)
      throw sw::DomainMismatch("point has dimensions " + xv.domain.to_string() + ", series source is " +
                               F.source().to_string());
    sw::APoint<sw::Rational> x(F.source(), a, std::move(xv.even), std::move(xv.odd));
    try {
      auto y = sw::apply_series(F, x);
      image_json = point_json(y);
      image_text = sw::format_point(y);
    } catch (const sw::InexactEvaluation&) {
      auto y = sw::apply_series(F, sw::to_double(x));
      image_json = point_json(y);
      image_text = sw::format_point(y);
    }
  }

  if (g.json) {
    json j = {{"source", F.source().to_string()},
              {"target", F.target().to_string()},
              {"order", F.order()},
              {"smooth", r.pass},
              {"checks", r.checks}};
    if (r.witness) j["witness"] = r.witness->to_string();
    if (phi) {
      json pbs = json::array();
      for (const auto& s : phi->pullbacks()) {
        json comps = json::object();
        for (const auto& [J, e] : s.components()) comps[sw::to_string(J)] = sw::to_string(e);
        pbs.push_back(comps);
      }
      j["pullbacks"] = pbs;
    }
    if (image_json) j["image"] = *image_json;
    return {dump(j), r.pass ? 0 : 1};
  }
  std::string out = "source: " + F.source().to_string() + "\ntarget: " + F.target().to_string() +
                    "\norder: " + std::to_string(F.order()) + "\n";
  out += std::string("smooth: ") + (r.pass ? "yes" : "no") + " (" + std::to_string(r.checks) + " checks)\n";
  if (r.witness) out += "witness: " + r.witness->to_string() + "\n";
  if (phi) out += sw::format_pullbacks(*phi);
  if (pt) out += "image:\n" + image_text;
  return {out, r.pass ? 0 : 1};
}

// ---------------------------------------------------------------- transit

Output cmd_transit(const Globals& g, const std::string& transit_path, const std::optional<std::string>& section_path) {
  auto X = sw::parse_transit<sw::Rational>(read_file(transit_path), g.max_dim);
  std::optional<sw::SectionText> section;
  if (section_path) section = sw::parse_section_text(read_file(*section_path));

  sw::APoint<sw::Rational> z = sw::transit(X, g.max_dim);
  auto back = sw::transit_inverse(z);
  const bool roundtrip = back.point == X.point;

  std::optional<std::string> y_text, z_text;
  std::optional<json> y_json, z_json;
  bool agree = true;
  if (section) {
    sw::Section s = section->on(X.chart.source);
    try {
      auto y = sw::induced_functional(s, X, z.algebra());
      auto e = sw::eval(s, z);
      agree = y == e;
      y_text = sw::format_element(y);
      z_text = sw::format_element(e);
      y_json = element_json(y);
      z_json = element_json(e);
    } catch (const sw::InexactEvaluation&) {
      sw::ClassicalWeilPoint<double> Xd{X.chart, sw::to_double(X.point)};
      auto zd = sw::to_double(z);
      auto y = sw::induced_functional(s, Xd, zd.algebra());
      auto e = sw::eval(s, zd);
      agree = sw::approx_equal(y, e, 1e-9);
      y_text = sw::format_element(y);
      z_text = sw::format_element(e);
      y_json = element_json(y);
      z_json = element_json(e);
    }
  }
  const int code = roundtrip && agree ? 0 : 1;

  if (g.json) {
    json j = {{"point", point_json(z)}, {"roundtrip", roundtrip}};
    if (section) {
      j["induced"] = *y_json;
      j["eval"] = *z_json;
      j["agree"] = agree;
    }
    return {dump(j), code};
  }
  std::string out = sw::format_point(z);
  out += std::string("roundtrip: ") + (roundtrip ? "ok" : "FAILED") + "\n";
  if (section) {
    out += "Y(s) = " + *y_text + "\n";
    out += "eval(s) = " + *z_text + "\n";
    out += std::string("agree: ") + (agree ? "yes" : "no") + "\n";
  }
  return {out, code};
}

// ---------------------------------------------------------------- verify

Output cmd_verify(const Globals& g, const std::string& suite) {
  sw::verify::Options opt{g.seed, g.tol, g.samples, g.order, g.max_dim};
  auto report = sw::verify::run_suite(suite, opt);
  if (!report) {
    std::string names;
    for (const auto& n : sw::verify::suite_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown suite '" + suite + "' (expected one of: " + names + ")");
  }
  const int code = report->pass() ? 0 : 1;
  if (g.json) {
    json checks = json::array();
    for (const auto& c : report->checks) {
      json jc = {{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"notes", c.notes}};
      if (!c.pass()) jc["first_counterexample"] = c.first_failure;
      checks.push_back(jc);
    }
    json j = {{"suite", report->suite}, {"seed", g.seed}, {"pass", report->pass()}, {"checks", checks}};
    return {dump(j), code};
  }
  return {report->to_string(), code};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Super Weil algebras and the Weil-Berezin functor on superdomains"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Smoothness residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--samples", g.samples, "Smoothness sample points")->check(CLI::PositiveNumber);
  app.add_option("--order", g.order, "Series truncation order");
  app.add_option("--max-dim", g.max_dim, "Algebra dimension cap")->check(CLI::PositiveNumber);

  std::function<Output()> run;

  std::string desc;
  auto* algebra = app.add_subcommand("algebra", "Dimension, height, width and basis of an algebra");
  algebra->add_option("DESC", desc, "Algebra descriptor")->required();
  algebra->callback([&] { run = [&] { return cmd_algebra(g, desc); }; });

  std::string section, point;
  std::optional<std::string> algebra_flag;
  auto* eval = app.add_subcommand("eval", "Evaluate a section at an A-point");
  eval->add_option("SECTION", section, "Section file")->required();
  eval->add_option("POINT", point, "Point file")->required();
  eval->add_option("--algebra", algebra_flag, "Algebra descriptor when the point file has no header");
  eval->callback([&] { run = [&] { return cmd_eval(g, section, point, algebra_flag); }; });

  std::string base, even, odd;
  auto* tangent = app.add_subcommand("tangent", "Pair a tangent vector with a section");
  tangent->add_option("SECTION", section, "Section file")->required();
  tangent->add_option("--base", base, "Base point, comma separated")->required();
  tangent->add_option("--even", even, "Even components, comma separated")->required();
  tangent->add_option("--odd", odd, "Odd components, comma separated");
  tangent->callback([&] { run = [&] { return cmd_tangent(g, section, base, even, odd); }; });

  std::string values;
  auto* derive = app.add_subcommand("derive", "Apply the x_A-derivation with given coordinate values");
  derive->add_option("SECTION", section, "Section file")->required();
  derive->add_option("POINT", point, "Point file")->required();
  derive->add_option("VALUES", values, "Derivation values, in point file form")->required();
  derive->add_option("--algebra", algebra_flag, "Algebra descriptor when the point file has no header");
  derive->callback([&] { run = [&] { return cmd_derive(g, section, point, values, algebra_flag); }; });

  std::string file;
  std::optional<std::string> optional_section;
  auto* dist = app.add_subcommand("dist", "Realize a distribution through a jet algebra point");
  dist->add_option("DIST", file, "Distribution file")->required();
  dist->add_option("SECTION", optional_section, "Section file to pair with");
  dist->callback([&] { run = [&] { return cmd_dist(g, file, optional_section); }; });

  std::optional<std::string> optional_point;
  auto* natural = app.add_subcommand("natural", "Decide whether a series family comes from a morphism");
  natural->add_option("SERIES", file, "Series file")->required();
  natural->add_option("POINT", optional_point, "Point file to transform");
  natural->callback([&] { run = [&] { return cmd_natural(g, file, optional_point); }; });

  auto* transit = app.add_subcommand("transit", "Map a classical Weil point to an A (x) B0-point");
  transit->add_option("TRANSIT", file, "Transit file")->required();
  transit->add_option("SECTION", optional_section, "Section file for the induced functional");
  transit->callback([&] { run = [&] { return cmd_transit(g, file, optional_section); }; });

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("SUITE", suite, "axioms | eval-morphism | naturality | tangent | distributions | "
                                     "transitivity | smoothness")
      ->required();
  verify->callback([&] { run = [&] { return cmd_verify(g, suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Output out = run();
    std::cout << out.text << std::flush;
    return out.code;
  } catch (const sw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == sw::ErrorKind::parse ? 2 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
