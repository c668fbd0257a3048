#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "toricheight/cli.h"

namespace toricheight {

namespace {

using nlohmann::json;

Integer integer_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    Integer z;
    if (!s.empty() && z.set_str(s, 10) == 0) return z;
  }
  throw ParseError(where + ": expected an integer");
}

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError&) {
    }
  }
  throw ParseError(where + ": expected a rational number such as \"3/4\"");
}

const json& array_field(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (!it->is_array()) throw ParseError(std::string(key) + ": expected an array");
  return *it;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Vertices of a convex polygon in counterclockwise order.
std::vector<std::pair<double, double>> polygon(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 3) return pts;
  double cx = 0, cy = 0;
  for (auto [x, y] : pts) {
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](auto a, auto b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  return pts;
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto at = what.find("at line");
    throw ParseError(source + ": invalid JSON" +
                     (at == std::string::npos ? ": " + what : " " + what.substr(at)));
  }
}

std::vector<LatticeVector> exponents_from_json(const json& doc) {
  const json& rows = array_field(doc, "exponents");
  std::vector<LatticeVector> a;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "exponents[" + std::to_string(i) + "]";
    LatticeVector v;
    if (rows[i].is_array()) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        v.push_back(integer_field(rows[i][j], where + "[" + std::to_string(j) + "]"));
      }
    } else {
      // A bare integer is a one-dimensional exponent.
      v.push_back(integer_field(rows[i], where));
    }
    if (!a.empty() && v.size() != a.front().size()) {
      throw ParseError(where + ": expected " + std::to_string(a.front().size()) +
                       " coordinates");
    }
    a.push_back(std::move(v));
  }
  if (a.empty()) throw ParseError("exponents: expected at least one exponent");
  return a;
}

std::vector<LogLinear> weights_from_json(const json& doc) {
  const json& rows = array_field(doc, "weights");
  std::vector<LogLinear> tau;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "weights[" + std::to_string(i) + "]";
    if (rows[i].is_number_integer()) {
      tau.emplace_back(rational_field(rows[i], where));
    } else if (rows[i].is_string()) {
      try {
        tau.push_back(LogLinear::parse(rows[i].get<std::string>()));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    } else {
      throw ParseError(where + ": expected a string such as \"1/2 - log(3)\"");
    }
  }
  return tau;
}

MonomialPair pair_from_json(const json& doc) {
  std::vector<LatticeVector> a = exponents_from_json(doc);
  const json& rows = array_field(doc, "coefficients");
  std::vector<Rational> alpha;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    alpha.push_back(rational_field(rows[i], where));
    if (alpha.back() == 0) throw ParseError(where + ": coefficients must be nonzero");
  }
  if (alpha.size() != a.size()) {
    throw ParseError("coefficients: expected " + std::to_string(a.size()) +
                     " entries, one per exponent");
  }
  return MonomialPair(std::move(a), std::move(alpha));
}

json pair_to_json(const MonomialPair& pair, const std::string& name) {
  json doc = json::object();
  if (!name.empty()) doc["name"] = name;
  json ex = json::array();
  for (const LatticeVector& v : pair.exponents()) {
    json row = json::array();
    for (const Integer& z : v) {
      if (z.fits_slong_p()) {
        row.push_back(z.get_si());
      } else {
        row.push_back(z.get_str());
      }
    }
    ex.push_back(std::move(row));
  }
  doc["exponents"] = std::move(ex);
  json co = json::array();
  for (const Rational& q : pair.coefficients()) co.push_back(to_string(q));
  doc["coefficients"] = std::move(co);
  return doc;
}

json value_to_json(const LogLinear& x, long bits) {
  json coeffs = json::object();
  coeffs["constant"] = to_string(x.constant());
  for (const auto& [p, q] : x.log_terms()) coeffs[p.get_str()] = to_string(q);
  const Approximation a = x.approximate(bits);
  return json{{"symbolic", x.to_string()},
              {"coefficients", std::move(coeffs)},
              {"decimal", a.decimal},
              {"error_bound", a.error_bound}};
}

json roof_to_json(const Roof& f) {
  auto point_json = [](const Point& p) {
    json row = json::array();
    for (const LogLinear& c : p) row.push_back(c.to_string());
    return row;
  };
  json domain = json::array();
  for (const Point& v : f.domain().vertices()) domain.push_back(point_json(v));
  json gens = json::array();
  for (const LiftedPoint& g : f.generators()) {
    json base = json::array();
    for (const Rational& q : g.base) base.push_back(to_string(q));
    gens.push_back(json{{"base", std::move(base)}, {"lift", g.lift.to_string()}});
  }
  json cells = json::array();
  for (const EnvelopeCell& c : f.cells()) {
    json grad = json::array();
    for (const LogLinear& g : c.gradient) grad.push_back(g.to_string());
    cells.push_back(json{{"vertices", c.vertices},
                         {"gradient", std::move(grad)},
                         {"offset", c.offset.to_string()}});
  }
  return json{{"dimension", f.base_dim()},
              {"domain", std::move(domain)},
              {"generators", std::move(gens)},
              {"cells", std::move(cells)},
              {"integral", roof_integral(f).to_string()}};
}

std::string render_svg(const Roof& f, const std::string& title) {
  const std::size_t n = f.base_dim();
  if (n != 1 && n != 2) throw HypothesisError("plots need a 1- or 2-dimensional domain");
  constexpr double kW = 640, kH = 400, kMx = 64, kMy = 40;
  const auto& gens = f.generators();
  const std::vector<std::size_t> on = f.roof_generators();

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const LiftedPoint& g : gens) {
    const double x = g.base[0].get_d();
    const double y = n == 1 ? g.lift.to_double() : g.base[1].get_d();
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax - xmin < 1e-9) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 1;
    ymax += 1;
  }
  auto sx = [&](double x) { return kMx + (x - xmin) / (xmax - xmin) * (kW - 2 * kMx); };
  auto sy = [&](double y) { return kH - kMy - (y - ymin) / (ymax - ymin) * (kH - 2 * kMy); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
       "viewBox=\"0 0 640 400\">\n";
  s << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << escape(title) << "</text>\n";

  if (n == 1) {
    // Lifted polytope outline.
    std::vector<std::pair<double, double>> pts;
    for (const LiftedPoint& g : gens) pts.emplace_back(g.base[0].get_d(), g.lift.to_double());
    std::vector<Point> lifted;
    for (const LiftedPoint& g : gens) lifted.push_back(make_point(g));
    const Polytope hull = Polytope::convex_hull(lifted);
    std::vector<std::pair<double, double>> outline;
    for (const Point& v : hull.vertices()) outline.emplace_back(v[0].to_double(), v[1].to_double());
    outline = polygon(outline);
    s << "<polygon fill=\"#dde6f0\" stroke=\"#6080a0\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < outline.size(); ++i) {
      s << (i ? " " : "") << fmt(sx(outline[i].first)) << "," << fmt(sy(outline[i].second));
    }
    s << "\"/>\n";
    // Axis at the lowest ordinate.
    s << "<line x1=\"" << fmt(kMx) << "\" y1=\"" << fmt(kH - kMy) << "\" x2=\"" << fmt(kW - kMx)
      << "\" y2=\"" << fmt(kH - kMy) << "\" stroke=\"black\"/>\n";
    // Roof in bold through the cell breakpoints.
    std::vector<std::size_t> breaks = on;
    std::sort(breaks.begin(), breaks.end(), [&](std::size_t a, std::size_t b) {
      return gens[a].base[0] < gens[b].base[0];
    });
    s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"3\" points=\"";
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      const LiftedPoint& g = gens[breaks[i]];
      s << (i ? " " : "") << fmt(sx(g.base[0].get_d())) << "," << fmt(sy(g.lift.to_double()));
    }
    s << "\"/>\n";
    for (const LiftedPoint& g : gens) {
      s << "<circle cx=\"" << fmt(sx(g.base[0].get_d())) << "\" cy=\""
        << fmt(sy(g.lift.to_double())) << "\" r=\"4\" fill=\"#c03030\"/>\n";
    }
    std::vector<Rational> ticks;
    for (const LiftedPoint& g : gens) ticks.push_back(g.base[0]);
    std::sort(ticks.begin(), ticks.end());
    ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
    for (const Rational& t : ticks) {
      s << "<text x=\"" << fmt(sx(t.get_d())) << "\" y=\"" << fmt(kH - kMy + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(to_string(t)) << "</text>\n";
    }
    for (std::size_t i : breaks) {
      const LiftedPoint& g = gens[i];
      s << "<text x=\"" << fmt(sx(g.base[0].get_d()) + 6) << "\" y=\""
        << fmt(sy(g.lift.to_double()) - 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(g.lift.to_string())
        << "</text>\n";
    }
  } else {
    // Regular subdivision of the domain, labelled by roof values.
    for (const EnvelopeCell& c : f.cells()) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i : c.vertices) pts.emplace_back(gens[i].base[0].get_d(), gens[i].base[1].get_d());
      pts = polygon(pts);
      s << "<polygon fill=\"#dde6f0\" stroke=\"black\" stroke-width=\"3\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        s << (i ? " " : "") << fmt(sx(pts[i].first)) << "," << fmt(sy(pts[i].second));
      }
      s << "\"/>\n";
    }
    for (const LiftedPoint& g : gens) {
      s << "<circle cx=\"" << fmt(sx(g.base[0].get_d())) << "\" cy=\""
        << fmt(sy(g.base[1].get_d())) << "\" r=\"4\" fill=\"#c03030\"/>\n";
    }
    for (std::size_t i : on) {
      const LiftedPoint& g = gens[i];
      s << "<text x=\"" << fmt(sx(g.base[0].get_d()) + 6) << "\" y=\""
        << fmt(sy(g.base[1].get_d()) - 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(g.lift.to_string())
        << "</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace toricheight
