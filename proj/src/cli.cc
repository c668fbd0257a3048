#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "toricheight/cli.h"
#include "toricheight/mixed.h"

namespace toricheight {

namespace {

using nlohmann::json;

struct Settings {
  std::string format = "text";
  long bits = 128;
  std::optional<std::uint64_t> cap;
  std::string place = "inf";
  long degree = -1;
  std::string out_path;
  std::string map_path;
  std::vector<std::string> files;
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json load(const std::string& path) { return parse_json(read_source(path), path); }

std::uint64_t effective_cap(const Settings& s) {
  if (s.cap) return *s.cap;
  if (const char* env = std::getenv("TORIC_HEIGHT_CAP")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("TORIC_HEIGHT_CAP: not a number: '") + env + "'");
  }
  return kDefaultEnumerationCap;
}

std::string name_of(const json& doc) {
  auto it = doc.find("name");
  return it != doc.end() && it->is_string() ? it->get<std::string>() : "";
}

// Weights come from "weights" or, for a pair document, from the coefficients
// at the requested place.
WeightedSupport weighted_support(const json& doc, const Place& v) {
  WeightedSupport w;
  if (doc.is_object() && doc.contains("weights")) {
    w.exponents = exponents_from_json(doc);
    w.tau = weights_from_json(doc);
    if (w.tau.size() != w.exponents.size()) {
      throw ParseError("weights: expected " + std::to_string(w.exponents.size()) +
                       " entries, one per exponent");
    }
    return w;
  }
  const MonomialPair pair = pair_from_json(doc);
  w.exponents = pair.exponents();
  w.tau = weight_vector(pair, v);
  return w;
}

const json& document_array(const json& doc, const std::string& what) {
  if (doc.is_array()) return doc;
  if (doc.is_object()) {
    for (const char* key : {"members", "documents", "polytopes", "roofs"}) {
      if (doc.contains(key) && doc[key].is_array()) return doc[key];
    }
  }
  throw ParseError(what + ": expected an array of documents");
}

void print_value(std::ostream& out, const Settings& s, const std::string& label,
                 const LogLinear& x, json extra = json::object()) {
  if (s.format == "symbolic") {
    out << x.to_string() << "\n";
  } else if (s.format == "decimal") {
    out << x.approximate(s.bits).decimal << "\n";
  } else if (s.format == "json") {
    extra["command"] = label;
    extra["value"] = value_to_json(x, s.bits);
    out << extra.dump(2) << "\n";
  } else {
    out << label << ": " << x.to_string() << "\n";
    out << "  \xe2\x89\x88 " << x.approximate(s.bits).decimal << "\n";
  }
}

void print_report(std::ostream& out, const Settings& s, const std::string& label,
                  const HeightReport& r, const std::string& name) {
  if (s.format != "text" && s.format != "json") {
    print_value(out, s, label, r.value);
    return;
  }
  if (s.format == "json") {
    json places = json::array();
    for (const auto& [v, x] : r.per_place) {
      places.push_back(json{{"place", v.to_string()}, {"value", value_to_json(x, s.bits)}});
    }
    json doc{{"command", label},
             {"value", value_to_json(r.value, s.bits)},
             {"degree", r.degree.get_str()},
             {"dim", r.dim},
             {"local_factor", r.local_factor.get_str()},
             {"per_place", std::move(places)}};
    if (!name.empty()) doc["name"] = name;
    out << doc.dump(2) << "\n";
    return;
  }
  if (!name.empty()) out << "name: " << name << "\n";
  out << "degree: " << r.degree.get_str() << "\n";
  out << "dim: " << r.dim << "\n";
  out << label << ": " << r.value.to_string() << "\n";
  out << "  \xe2\x89\x88 " << r.value.approximate(s.bits).decimal << "\n";
  out << "per place (times " << r.local_factor.get_str() << "):\n";
  for (const auto& [v, x] : r.per_place) {
    out << "  " << v.to_string() << ": " << x.to_string() << "\n";
  }
}

void print_pair(std::ostream& out, const MonomialPair& pair, const std::string& name) {
  out << pair_to_json(pair, name).dump(2) << "\n";
}

int dispatch(const std::string& cmd, const std::string& sub, const Settings& s,
             std::ostream& out) {
  const Place place = Place::parse(s.place);
  if (cmd == "height") {
    const json doc = load(s.files.at(0));
    print_report(out, s, "height", normalized_height(pair_from_json(doc)), name_of(doc));
  } else if (cmd == "degree") {
    const Integer d = degree(pair_from_json(load(s.files.at(0))));
    print_value(out, s, "degree", LogLinear(Rational(d)));
  } else if (cmd == "chow-weight") {
    const WeightedSupport w = weighted_support(load(s.files.at(0)), place);
    print_value(out, s, "chow-weight", chow_weight(w.exponents, w.tau));
  } else if (cmd == "hilbert") {
    const WeightedSupport w = weighted_support(load(s.files.at(0)), place);
    print_value(out, s, "hilbert", hilbert_weight(w.exponents, w.tau, s.degree, effective_cap(s)),
                json{{"degree", s.degree}});
  } else if (cmd == "hnorm") {
    const MonomialPair pair = pair_from_json(load(s.files.at(0)));
    print_value(out, s, "hnorm", arithmetic_hilbert_norm(pair, s.degree, effective_cap(s)),
                json{{"degree", s.degree}});
  } else if (cmd == "mixed-volume") {
    const json doc = load(s.files.at(0));
    std::vector<Polytope> qs;
    for (const json& d : document_array(doc, "mixed-volume")) {
      std::vector<Point> pts;
      for (const LatticeVector& a : exponents_from_json(d)) pts.push_back(make_point(a));
      qs.push_back(convex_hull(std::move(pts)));
    }
    print_value(out, s, "mixed-volume", mixed_volume(qs));
  } else if (cmd == "mixed-integral") {
    const json doc = load(s.files.at(0));
    std::vector<Roof> roofs;
    for (const json& d : document_array(doc, "mixed-integral")) {
      const WeightedSupport w = weighted_support(d, place);
      roofs.push_back(roof_from_weight(w.exponents, w.tau));
    }
    print_value(out, s, "mixed-integral", mixed_integral(roofs));
  } else if (cmd == "multiheight") {
    const json doc = load(s.files.at(0));
    std::vector<MonomialPair> family;
    for (const json& d : document_array(doc, "multiheight")) family.push_back(pair_from_json(d));
    print_report(out, s, "multiheight", multiheight(family), name_of(doc.is_object() ? doc : json{}));
  } else if (cmd == "orbits") {
    const json doc = load(s.files.at(0));
    const MonomialPair pair = pair_from_json(doc);
    json list = json::array();
    for (const Orbit& o : orbit_decomposition(pair)) {
      const HeightReport h = normalized_height(o.pair);
      list.push_back(json{{"dim", o.face.dim},
                          {"face_vertices", o.face.vertices},
                          {"members", o.members},
                          {"pair", pair_to_json(o.pair)},
                          {"height", value_to_json(h.value, s.bits)}});
    }
    if (s.format == "json") {
      out << json{{"command", "orbits"}, {"orbits", list}}.dump(2) << "\n";
    } else {
      for (const json& o : list) {
        out << "dim " << o["dim"].get<int>() << " members " << o["members"].dump()
            << " height " << o["height"]["symbolic"].get<std::string>() << "\n";
      }
    }
  } else if (cmd == "compose") {
    const json first = load(s.files.at(0));
    const MonomialPair p = pair_from_json(first);
    if (sub == "join" || sub == "segre") {
      if (s.files.size() != 2) throw ParseError(sub + ": expected two pair documents");
      const MonomialPair q = pair_from_json(load(s.files[1]));
      print_pair(out, sub == "join" ? join(p, q) : segre(p, q), sub);
    } else if (sub == "veronese") {
      print_pair(out, veronese(p, s.degree, effective_cap(s)), "veronese");
    } else {
      const json map = load(s.map_path);
      const std::vector<LatticeVector> b = exponents_from_json(map);
      const MonomialPair beta = pair_from_json(map);
      print_pair(out, monomial_image(p, b, beta.coefficients()), "image");
    }
  } else if (cmd == "plot") {
    const json doc = load(s.files.at(0));
    const WeightedSupport w = weighted_support(doc, place);
    const Roof f = roof_from_weight(w.exponents, w.tau);
    std::string title = name_of(doc);
    title += (title.empty() ? "" : ", ") + std::string("v = ") + place.to_string();
    const std::string svg = render_svg(f, title);
    std::ofstream file(s.out_path, std::ios::binary);
    if (!file) throw Error("cannot write '" + s.out_path + "'");
    file << svg;
    if (s.format == "json") {
      out << roof_to_json(f).dump(2) << "\n";
    } else {
      out << "wrote " << s.out_path << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact normalized heights of projective toric varieties", "toric_height"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "symbolic", "decimal"}));
  app.add_option("--bits", s.bits, "Precision of decimal output in bits")
      ->check(CLI::Range(16L, 1L << 20));
  app.add_option("--cap", s.cap, "Enumeration cap for Hilbert weights");

  auto file_command = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", s.files, "JSON document ('-' for stdin)")->required()->expected(1);
    return c;
  };
  file_command("height", "Normalized height of X_{A,alpha}");
  file_command("degree", "Degree of X_{A,alpha}");
  file_command("chow-weight", "Chow weight e_tau")->add_option("--place", s.place);
  CLI::App* hil = file_command("hilbert", "Hilbert weight s_tau in degree D");
  hil->add_option("--degree", s.degree)->required();
  hil->add_option("--place", s.place);
  file_command("hnorm", "Arithmetic Hilbert function in degree D")
      ->add_option("--degree", s.degree)
      ->required();
  file_command("mixed-volume", "Mixed volume of the exponent polytopes");
  file_command("mixed-integral", "Mixed integral of n+1 roofs")->add_option("--place", s.place);
  file_command("multiheight", "Multiheight of n+1 monomial embeddings");
  file_command("orbits", "Torus orbits and their heights");
  CLI::App* plot = file_command("plot", "SVG of the roof at one place");
  plot->add_option("--place", s.place);
  plot->add_option("--out", s.out_path)->required();

  CLI::App* compose = app.add_subcommand("compose", "Build a new pair document");
  compose->require_subcommand(1);
  for (const char* kind : {"join", "segre"}) {
    compose->add_subcommand(kind, std::string(kind) + " of two pairs")
        ->add_option("files", s.files)
        ->required()
        ->expected(2);
  }
  CLI::App* ver = compose->add_subcommand("veronese", "Veronese re-embedding in degree D");
  ver->add_option("file", s.files)->required()->expected(1);
  ver->add_option("--degree", s.degree)->required();
  CLI::App* img = compose->add_subcommand("image", "Image under a monomial map");
  img->add_option("file", s.files)->required()->expected(1);
  img->add_option("--map", s.map_path, "Map document: exponents b_j and coefficients beta_j")
      ->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::string cmd, sub;
  for (CLI::App* c : app.get_subcommands()) {
    cmd = c->get_name();
    for (CLI::App* d : c->get_subcommands()) sub = d->get_name();
  }
  try {
    return dispatch(cmd, sub, s, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapExceededError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace toricheight
