/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/io.hpp"

#include "bext/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace bext::io {

namespace {

using json = nlohmann::json;

json int_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer int_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw SchemaError(std::string("bad integer in ") + what);
    return z;
  }
  throw SchemaError(std::string(what) + " must be an integer (number or decimal string)");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

json q_to_json(const Rational& q) { return {{"num", int_to_json(q.num())}, {"den", int_to_json(q.den())}}; }

Rational q_from_json(const json& j) {
  const Integer num = int_from_json(field(j, "num"), "num"), den = int_from_json(field(j, "den"), "den");
  if (den == 0) throw SchemaError("rational with zero denominator");
  return Rational(num, den);
}

long long_from_json(const json& j, const char* what) {
  const Integer z = int_from_json(j, what);
  if (!z.fits_slong_p()) throw SchemaError(std::string(what) + " out of range");
  return z.get_si();
}

json rect_to_json(const RationalRect& r) {
  return {{"x_lo", q_to_json(r.x_lo())}, {"x_hi", q_to_json(r.x_hi())}, {"y_lo", q_to_json(r.y_lo())},
          {"y_hi", q_to_json(r.y_hi())}};
}

template <class F>
auto shaped(F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid shape: ") + e.what());
  }
}

RationalRect rect_from_json(const json& j) {
  return shaped([&] {
    return RationalRect(q_from_json(field(j, "x_lo")), q_from_json(field(j, "x_hi")), q_from_json(field(j, "y_lo")),
                        q_from_json(field(j, "y_hi")));
  });
}

json rects_to_json(const std::vector<RationalRect>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(rect_to_json(r));
  return a;
}

std::vector<RationalRect> rects_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rectangles");
  std::vector<RationalRect> out;
  for (const auto& r : j) out.push_back(rect_from_json(r));
  return out;
}

json piece_to_json(const DomainPiece& u) {
  if (u.is_disk()) return {{"kind", "disk"}, {"radius", q_to_json(u.disk().radius)}};
  const auto& c = u.carleson();
  return {{"kind", "carleson"},
          {"r1", q_to_json(c.r1())},
          {"r2", q_to_json(c.r2())},
          {"theta1", q_to_json(c.theta1())},
          {"theta2", q_to_json(c.theta2())}};
}

DomainPiece piece_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (kind == "disk") return shaped([&] { return DomainPiece::origin_disk(q_from_json(field(j, "radius"))); });
  if (kind == "carleson")
    return shaped([&] {
      return DomainPiece(CarlesonRect(q_from_json(field(j, "r1")), q_from_json(field(j, "r2")),
                                      q_from_json(field(j, "theta1")), q_from_json(field(j, "theta2"))));
    });
  throw SchemaError("piece kind must be 'disk' or 'carleson'");
}

json chain_to_json(const ArcChain& a) {
  json out = json::array();
  for (const auto& w : a.chains) out.push_back({{"m", w.m}, {"rects", rects_to_json(w.rects)}});
  return out;
}

ArcChain chain_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("arc chain must be an array of witnessing chains");
  ArcChain a;
  for (const auto& w : j) {
    const long m = long_from_json(field(w, "m"), "m");
    auto rects = rects_from_json(field(w, "rects"));
    a.chains.push_back(shaped([&] { return WitnessingChain(m, std::move(rects)); }));
  }
  return a;
}

json parse(const std::string& text, const char* format) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  const json& f = field(j, "format");
  if (!f.is_string() || f.get<std::string>() != format)
    throw SchemaError(std::string("expected format '") + format + "'");
  return j;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

std::string write_phi(const FunctionApprox& phi) {
  json pairs = json::array();
  for (const auto& [u, v] : phi.pairs) pairs.push_back({{"piece", piece_to_json(u)}, {"value", rect_to_json(v)}});
  return dump({{"format", "phi.approx"}, {"pairs", pairs}});
}

std::string write_boundary(const CompactApprox& bd) {
  return dump({{"format", "boundary.approx"}, {"rects", rects_to_json(bd.rects)}});
}

std::string write_ulac(const ULACApprox& g) { return dump({{"format", "ulac.approx"}, {"values", g.values}}); }

std::string write_point(const PointApprox& p) { return dump({{"format", "point.approx"}, {"rect", rect_to_json(p.rect)}}); }

std::string write_config(const Configuration& c) {
  json u = json::array();
  for (const auto& p : c.u_cover) u.push_back(piece_to_json(p));
  json j = {{"format", "config"},
            {"k1", int_to_json(c.k1)},
            {"k2", int_to_json(c.k2)},
            {"t", c.t},
            {"c1", chain_to_json(c.c1)},
            {"sigma", chain_to_json(c.sigma)},
            {"c2", chain_to_json(c.c2)},
            {"tau", chain_to_json(c.tau)},
            {"u_cover", u},
            {"phi_1_minus_s0", rect_to_json(c.phi_1_minus_s0)},
            {"phi_seg", rects_to_json(c.phi_seg.rects)},
            {"phi_r0", rect_to_json(c.phi_r0)}};
  if (c.tau_k) j["tau_k"] = *c.tau_k;
  return dump(j);
}

std::string decimal_rect(const RationalRect& r) {
  return "[" + r.x_lo().decimal(20, false) + ", " + r.x_hi().decimal(20, true) + "] x [" + r.y_lo().decimal(20, false) +
         ", " + r.y_hi().decimal(20, true) + "]";
}

std::string write_report(const RunReport& r, long wall_time_ms) {
  json configs = json::array();
  for (const auto& c : r.configs) {
    json clauses = json::array();
    for (const auto& cl : c.clauses) clauses.push_back({{"name", cl.name}, {"passed", cl.passed}, {"detail", cl.detail}});
    json e = {{"k1", int_to_json(c.k1)}, {"k2", int_to_json(c.k2)}, {"accepted", c.accepted}, {"clauses", clauses}};
    if (c.output) e["output_rect"] = rect_to_json(*c.output);
    configs.push_back(e);
  }
  return dump({{"format", "run.report"},
               {"output_rect", rect_to_json(r.output_rect)},
               {"output_decimal", decimal_rect(r.output_rect)},
               {"decimal_note", "20-digit outward rounding; not authoritative"},
               {"configurations_found", r.configurations_found},
               {"fallback", r.fallback},
               {"fast_path", r.fast_path},
               {"wall_time_ms", wall_time_ms},
               {"notes", r.notes},
               {"configs", configs}});
}

FunctionApprox read_phi(const std::string& text) {
  const json j = parse(text, "phi.approx");
  const json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw SchemaError("pairs must be an array");
  FunctionApprox phi;
  for (const auto& p : pairs) phi.pairs.push_back({piece_from_json(field(p, "piece")), rect_from_json(field(p, "value"))});
  return phi;
}

CompactApprox read_boundary(const std::string& text) {
  const json j = parse(text, "boundary.approx");
  auto rects = rects_from_json(field(j, "rects"));
  return shaped([&] { return CompactApprox(std::move(rects)); });
}

ULACApprox read_ulac(const std::string& text) {
  const json j = parse(text, "ulac.approx");
  const json& v = field(j, "values");
  if (!v.is_array()) throw SchemaError("values must be an array");
  ULACApprox g;
  for (const auto& x : v) {
    const long n = long_from_json(x, "ulac value");
    if (n < 0) throw SchemaError("ULAC values are naturals");
    g.values.push_back(n);
  }
  return g;
}

PointApprox read_point(const std::string& text) {
  const json j = parse(text, "point.approx");
  return PointApprox{rect_from_json(field(j, "rect"))};
}

Configuration read_config(const std::string& text) {
  const json j = parse(text, "config");
  std::vector<DomainPiece> u;
  const json& uj = field(j, "u_cover");
  if (!uj.is_array()) throw SchemaError("u_cover must be an array");
  for (const auto& p : uj) u.push_back(piece_from_json(p));
  auto seg = rects_from_json(field(j, "phi_seg"));
  Configuration c{int_from_json(field(j, "k1"), "k1"),
                  int_from_json(field(j, "k2"), "k2"),
                  chain_from_json(field(j, "c1")),
                  chain_from_json(field(j, "c2")),
                  chain_from_json(field(j, "sigma")),
                  chain_from_json(field(j, "tau")),
                  long_from_json(field(j, "t"), "t"),
                  std::move(u),
                  rect_from_json(field(j, "phi_1_minus_s0")),
                  shaped([&] { return CompactApprox(std::move(seg)); }),
                  rect_from_json(field(j, "phi_r0")),
                  std::nullopt};
  if (j.contains("tau_k")) c.tau_k = long_from_json(j.at("tau_k"), "tau_k");
  return c;
}

RationalRect read_report_output(const std::string& text) {
  return rect_from_json(field(parse(text, "run.report"), "output_rect"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CapabilityError("cannot write " + path);
  out << text;
  if (!out) throw CapabilityError("write failed: " + path);
}

namespace {

std::string num(const Rational& q) { return q.decimal(8, false); }

// Only cover rectangles are <rect> elements; everything else is drawn as a polygon so
// that element counts identify the cover.  The outer group flips y.
std::string svg_rect(const RationalRect& r, const std::string& cls) {
  return "<rect class=\"" + cls + "\" x=\"" + num(r.x_lo()) + "\" y=\"" + num(r.y_lo()) + "\" width=\"" +
         num(r.width()) + "\" height=\"" + num(r.height()) + "\"/>\n";
}

std::string svg_poly(const RationalRect& r, const std::string& cls) {
  const std::string x0 = num(r.x_lo()), x1 = num(r.x_hi()), y0 = num(r.y_lo()), y1 = num(r.y_hi());
  return "<polygon class=\"" + cls + "\" points=\"" + x0 + "," + y0 + " " + x1 + "," + y0 + " " + x1 + "," + y1 +
         " " + x0 + "," + y1 + "\"/>\n";
}

}  // namespace

std::string render_svg(const PlotScene& s) {
  std::vector<RationalRect> all;
  if (s.phi)
    for (const auto& p : s.phi->pairs) all.push_back(p.value);
  if (s.bd) all.insert(all.end(), s.bd->rects.begin(), s.bd->rects.end());
  if (s.config)
    for (const auto& w : s.config->circular_links()) all.insert(all.end(), w.rects.begin(), w.rects.end());
  if (s.output) all.push_back(*s.output);
  const RationalRect box = all.empty() ? RationalRect(Rational(-1), Rational(1), Rational(-1), Rational(1))
                                       : bounding_box(std::span<const RationalRect>(all)).expanded(Rational(1, 16));
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
    << num(box.x_lo()) << " " << num(-box.y_hi()) << " " << num(box.width()) << " " << num(box.height()) << "\">\n"
    << "<style>rect,polygon{fill:none;stroke-width:0.004}.value{stroke:#bbb;stroke-opacity:0.4}.cover{stroke:#000}"
    << ".chain-c1{stroke:#d62728}.chain-sigma{stroke:#2ca02c}.chain-c2{stroke:#1f77b4}.chain-tau{stroke:#9467bd}"
    << ".output{stroke:#ff7f0e;stroke-width:0.01}</style>\n"
    << "<g transform=\"scale(1,-1)\">\n";
  if (s.phi)
    for (const auto& p : s.phi->pairs) o << svg_poly(p.value, "value");
  if (s.bd)
    for (const auto& r : s.bd->rects) o << svg_rect(r, "cover");
  if (s.config) {
    const std::pair<const ArcChain*, const char*> arcs[] = {
        {&s.config->c1, "chain-c1"}, {&s.config->sigma, "chain-sigma"}, {&s.config->c2, "chain-c2"}, {&s.config->tau, "chain-tau"}};
    for (const auto& [a, cls] : arcs)
      for (const auto& w : a->chains)
        for (const auto& r : w.rects) o << svg_poly(r, cls);
  }
  if (s.output) o << svg_poly(*s.output, "output");
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace bext::io
